"""
Gauge fixings and the pullback-type extensions they induce.

A gauge fixing is a section of the projection of ``conn_hat`` onto its
orbit representatives. Given a functional ``s`` on omega and a gauge
fixing ``sigma``, the matching locus is the pullback of ``base_s`` against
the functional induced by ``s`` on the orbit space of ``conn_hat``; it is
embedded back into omega through ``sigma`` and becomes the correction
subspace of a complete extension.
"""
import logging
from collections import namedtuple

from ..basic_utils import format_rational
from ..errors import (DomainMismatch, EmptyConnHat, InvalidStructure,
                      NotInjectiveInvariant, ZeroDecomposition)
from ..extensions.extension_class import Extension
from ..finite_sets.finite_class import FinMap, FinSet, RatFn
from ..finite_sets.universal import compose, enumerate_sections, set_pullback
from ..group_actions.orbits import invariance_report, quotient_map

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["GaugeFixing", "PullbackWitness", "gauge_fixings", "pullback_locus",
           "pullback_type_extension", "sigma_independence", "nested_domain_check",
           "SigmaIndependenceReport", "NestedDomainReport"]

SigmaIndependenceReport = namedtuple(
    'SigmaIndependenceReport', ['holds', 'pairs', 'cardinalities'])

NestedDomainReport = namedtuple(
    'NestedDomainReport', ['holds', 'precondition', 'eta', 'subset_ok', 'commutes', 'reason'])


class GaugeFixing:
    """A section ``sigma`` of the quotient map ``pi`` of ``conn_hat``.

    Parameters
    ----------
    sigma : FinMap
        representatives -> conn_hat

    projection : FinMap
        conn_hat -> representatives

    index : int
        Position in the deterministic enumeration of all fixings.
    """

    def __init__(self, sigma, projection, index=0):
        if compose(sigma, projection) != FinMap.identity(projection.codomain):
            raise InvalidStructure("sigma is not a section of the quotient map")
        self.sigma = sigma
        self.projection = projection
        self.index = index

    def __call__(self, rep):
        return self.sigma(rep)

    def __eq__(self, other):
        if not isinstance(other, GaugeFixing):
            return NotImplemented
        return self.sigma == other.sigma

    def __hash__(self):
        return hash(self.sigma)

    def __repr__(self):
        return f"GaugeFixing({self.index}: {self.sigma!r})"


class PullbackWitness:
    """The matching locus of a pullback-type extension.

    Attributes
    ----------
    pb : FinSet
        Pairs ``(d, rep)`` with ``base_s(d)`` equal to the induced value at ``rep``.

    delta : FinMap
        pb -> conn

    embed : FinMap
        pb -> omega, the second projection followed by ``sigma``.

    image : FinSet
        Range of ``embed``.

    embed_injective, xi_square_commutes, invariance_established : bool
    """

    def __init__(self, pb, delta, embed, image, projection, quotient_fn):
        self.pb = pb
        self.delta = delta
        self.embed = embed
        self.image = image
        self.projection = projection
        self.quotient_fn = quotient_fn
        self.embed_injective = embed.is_injective()
        self.xi_square_commutes = None
        self.invariance_established = None

    def __repr__(self):
        return f"PullbackWitness(|pb|={len(self.pb)}, image={list(self.image)})"


def gauge_fixings(ctx, budget=None):
    """All gauge fixings of the context, in deterministic order.

    The number of fixings is the product of the orbit sizes of ``conn_hat``.
    """
    if not len(ctx.conn_hat):
        raise EmptyConnHat("conn_hat is empty, there is nothing to gauge fix")
    projection = quotient_map(ctx.gau_hat, ctx.conn_hat)
    sections = enumerate_sections(projection, budget=budget)
    return [GaugeFixing(sigma, projection, k) for k, sigma in enumerate(sections)]


def _quotient_functional(projection, s):
    """The functional induced by ``s`` on the orbit representatives."""
    reps = projection.codomain
    return RatFn(reps, {rep: s(rep) for rep in reps})


def pullback_locus(ctx, s, sigma):
    """Pullback of ``base_s`` against the functional ``s`` induces on the orbits.

    Returns
    -------
    PullbackWitness
    """
    projection = sigma.projection
    quotient_fn = _quotient_functional(projection, s)
    values = FinSet(sorted({format_rational(v) for v in ctx.base_s.values()}
                           | {format_rational(v) for v in quotient_fn.values()}))
    left = FinMap(ctx.conn, values, {d: format_rational(v) for d, v in ctx.base_s.items()})
    right = FinMap(quotient_fn.domain, values,
                   {r: format_rational(v) for r, v in quotient_fn.items()})
    pb, pi1, pi2 = set_pullback(left, right)
    to_omega = FinMap.inclusion(ctx.conn_hat, ctx.omega)
    embed = compose(compose(pi2, sigma.sigma), to_omega)
    witness = PullbackWitness(pb, pi1, embed, embed.image(), projection, quotient_fn)
    log.debug('Matching locus has %d pairs over %d points', len(pb), len(witness.image))
    return witness


def _check_xi_square(ctx, witness):
    """Whether the xi-action preserves the matching condition and the locus."""
    a = ctx.xi_action
    commutes = all(
        ctx.base_s(ctx.gau(h, witness.delta(p)))
        == witness.quotient_fn(witness.projection(a(h, witness.embed(p))))
        for h in ctx.gau.group for p in witness.pb)
    invariant = a.is_invariant(witness.image)
    return commutes, invariant


def pullback_type_extension(ctx, x0, s, sigma):
    """The complete extension carried by the matching locus of ``s``.

    Parameters
    ----------
    ctx : ExtensionContext

    x0 : FinSet
        Injective invariant subset for ``s`` with ``conn_hat <= x0 <= omega``.

    s : RatFn
        Defined on ``x0`` and at ``omega0``.

    sigma : GaugeFixing

    Returns
    -------
    (Extension, PullbackWitness)
        The extension has domain ``x0 + omega0``, ``s_hat = s`` there,
        correction subspace ``image + omega0``, zero correction term and
        ``delta`` read off the first projection (``omega0 -> d0``).

    Raises
    ------
    NotInjectiveInvariant
        ``x0`` is not an injective invariant subset for ``s``.
    ZeroDecomposition
        ``s(omega0)`` differs from ``base_s(d0)``.
    """
    if not ctx.conn_hat.issubset(x0) or not x0.issubset(ctx.omega):
        raise DomainMismatch("x0 must contain conn_hat and lie inside omega")
    if ctx.omega0 not in s.domain or not x0.issubset(s.domain):
        raise DomainMismatch("s must be defined on x0 and at omega0")
    report = invariance_report(ctx.gau_hat, s, x0)
    if not all(report):
        raise NotInjectiveInvariant(
            "x0 is not an injective invariant subset for s", report)
    if s(ctx.omega0) != ctx.base_s(ctx.d0):
        raise ZeroDecomposition("s does not vanish at omega0, so it cannot be adjoined")

    witness = pullback_locus(ctx, s, sigma)
    if not witness.embed_injective:
        log.warning('Matching locus embeds non-injectively; delta takes the least preimage',
                    extra={'deviation': 'pullback-embed-not-injective'})
    commutes, invariant = _check_xi_square(ctx, witness)
    witness.xi_square_commutes = commutes
    witness.invariance_established = invariant
    if not (commutes and invariant):
        log.warning('Invariance of the matching locus under the xi-action is not established',
                    extra={'deviation': 'pullback-invariance-not-established'})

    x = ctx.omega.subset(set(x0) | {ctx.omega0})
    c1 = ctx.omega.subset(set(witness.image) | {ctx.omega0})
    delta = {}
    for p in witness.pb:
        delta.setdefault(witness.embed(p), witness.delta(p))
    delta[ctx.omega0] = ctx.d0
    e = Extension(x, s.restrict(x), c1, RatFn.zero(c1), FinMap(c1, ctx.conn, delta),
                  label=f"pb[{len(x)}|{sigma.index}]")
    return e, witness


def sigma_independence(ctx, x0, s, budget=None):
    """Compare the matching loci of every pair of gauge fixings.

    For fixings ``sigma`` and ``sigma'`` the map ``embed' o embed^-1`` is a
    bijection between the two loci preserving ``s``.

    Returns
    -------
    SigmaIndependenceReport
        ``pairs`` lists ``(i, j, bijection, ok)``.
    """
    fixings = gauge_fixings(ctx, budget)
    witnesses = []
    for sigma in fixings:
        _, witness = pullback_type_extension(ctx, x0, s, sigma)
        witnesses.append(witness)
    cardinalities = [len(w.image) for w in witnesses]
    pairs = []
    holds = True
    for i in range(len(fixings)):
        for j in range(i + 1, len(fixings)):
            wi, wj = witnesses[i], witnesses[j]
            table = {}
            for p in wi.pb:
                table.setdefault(wi.embed(p), wj.embed(p))
            bijection = FinMap(wi.image, wj.image, table)
            ok = (bijection.is_bijective()
                  and all(s(x) == s(y) for x, y in bijection.items()))
            holds = holds and ok
            pairs.append((i, j, bijection, ok))
    log.info('Compared %d pairs of gauge fixings', len(pairs))
    return SigmaIndependenceReport(holds, pairs, cardinalities)


def nested_domain_check(ctx, x0, x1, s, sigma):
    """Compatibility of the matching loci of nested domains.

    For ``conn_hat <= x0 <= x1`` both injective invariant for ``s``, builds
    the mediating map between the two pullbacks and checks that the smaller
    locus sits inside the larger with the same functional values.

    Returns
    -------
    NestedDomainReport
        ``holds`` is None when the precondition fails; ``precondition``
        then says why.
    """
    chain = ctx.conn_hat.issubset(x0) and x0.issubset(x1) and x1.issubset(ctx.omega)
    if not chain:
        return NestedDomainReport(None, "domains are not nested above conn_hat",
                                  None, None, None, "precondition")
    for name, dom in (('x0', x0), ('x1', x1)):
        if not all(invariance_report(ctx.gau_hat, s, dom)):
            return NestedDomainReport(None, f"{name} is not an injective invariant subset",
                                      None, None, None, "precondition")

    e0, w0 = pullback_type_extension(ctx, x0, s, sigma)
    e1, w1 = pullback_type_extension(ctx, x1, s, sigma)
    # jbar: orbit representatives of conn_hat inside x0 map to those inside x1.
    jbar = {rep: w1.projection(rep) for rep in w0.projection.codomain}
    eta = {}
    for p in w0.pb:
        target = [q for q in w1.pb
                  if w1.delta(q) == w0.delta(p)
                  and w1.projection(w1.embed(q)) == jbar[w0.projection(w0.embed(p))]]
        if len(target) != 1:
            return NestedDomainReport(False, "ok", None, None, None,
                                      f"{len(target)} mediating candidates for {p}")
        eta[p] = target[0]
    eta = FinMap(w0.pb, w1.pb, eta)
    subset_ok = w0.image.issubset(w1.image) and e0.c1.issubset(e1.c1)
    commutes = (all(w1.embed(eta(p)) == w0.embed(p) for p in w0.pb)
                and all(e1.s_hat(c) == e0.s_hat(c) for c in e0.c1))
    holds = subset_ok and commutes and eta.is_injective()
    return NestedDomainReport(holds, "ok", eta, subset_ok, commutes, None)
