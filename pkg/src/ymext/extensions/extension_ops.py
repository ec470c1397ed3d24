"""
Operations on single extensions and families of extensions.
"""
import itertools
import logging
from collections import namedtuple

from ..constraints import DEFAULT_BUDGET
from ..errors import CoreDisagreement, DomainMismatch, OverlapViolation, ZeroExcluded
from ..finite_sets.finite_class import FinMap, FinSet, RatFn
from ..group_actions.orbits import invariance_report
from .extension_class import Extension, ExtensionContext, ExtMorphism
from .morphisms import hom_set

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["Violation", "ValidationReport", "validate_extension", "null_extension",
           "classify_trivial", "TrivialClass", "completion", "coproduct", "CoproductVerdict",
           "verify_coproduct", "is_complete", "is_injective", "is_small", "is_pointed",
           "relabel_extension", "transport_context"]

Violation = namedtuple('Violation', ['code', 'message', 'witness'])

TrivialClass = namedtuple('TrivialClass', ['kind', 'identity_check'])

CoproductVerdict = namedtuple('CoproductVerdict', ['holds', 'cocones_checked', 'failure'])


class ValidationReport:
    """Every invariant an extension violates, in checking order."""

    def __init__(self, violations=()):
        self.violations = list(violations)

    @property
    def valid(self):
        return not self.violations

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.valid

    def __repr__(self):
        codes = ', '.join(v.code for v in self.violations) or 'valid'
        return f"ValidationReport({codes})"


def validate_extension(ctx, e):
    """Check an extension against the invariants of its context.

    Parameters
    ----------
    ctx : ExtensionContext

    e : Extension

    Returns
    -------
    ValidationReport
        Codes, in order: ``delta-codomain``, ``domain-chain``,
        ``domain-invariance``, ``functional-invariance``,
        ``correction-subspace``, ``decomposition``.
    """
    found = []
    if e.delta.codomain != ctx.conn:
        found.append(Violation('delta-codomain', "delta does not map into conn", None))

    missing = [x for x in ctx.core if x not in e.x]
    outside = [x for x in e.x if x not in ctx.omega]
    if missing or outside:
        witness = (missing or outside)[0]
        found.append(Violation(
            'domain-chain',
            "x must contain conn_hat and omega0 and lie inside omega", witness))
    else:
        report = invariance_report(ctx.gau_hat, e.s_hat, e.x)
        if not report.invariant_subset:
            found.append(Violation('domain-invariance', "x is not gauge invariant", None))
        if not report.invariant_fn:
            found.append(Violation('functional-invariance',
                                   "s_hat is not gauge invariant", None))

    if ctx.omega0 not in e.c1 or not e.c1.issubset(e.x):
        witness = ctx.omega0 if ctx.omega0 not in e.c1 else \
            [c for c in e.c1 if c not in e.x][0]
        found.append(Violation('correction-subspace',
                               "c1 must contain omega0 and lie inside x", witness))

    if e.delta.codomain == ctx.conn:
        defects = e.decomposition_defect(ctx.base_s)
        if defects:
            found.append(Violation(
                'decomposition', "s_hat differs from base_s o delta + c_fn", defects[0]))
    return ValidationReport(found)


def null_extension(ctx):
    """The extension over all of omega whose maps are all null."""
    c1 = FinSet([ctx.omega0])
    return Extension(ctx.omega, RatFn.zero(ctx.omega), c1, RatFn.zero(c1),
                     FinMap.constant(c1, ctx.conn, ctx.d0), label='null')


def classify_trivial(ctx, e):
    """Recognise the trivial extension patterns.

    Returns
    -------
    TrivialClass
        ``kind`` is one of 'null-type', 'constant-type', 'identity-type' and
        'nontrivial', the first matching pattern in that order.
        ``identity_check`` is 'not applicable' when the context declares no
        embedding of conn.
    """
    identity_check = 'applicable' if ctx.embedding is not None else 'not applicable'
    delta_values = set(e.delta.table.values())
    if e.s_hat.is_zero() and e.c_fn.is_zero() and delta_values <= {ctx.d0}:
        return TrivialClass('null-type', identity_check)
    if e.s_hat.is_constant() and e.c_fn.is_constant() and len(delta_values) <= 1:
        return TrivialClass('constant-type', identity_check)
    if ctx.embedding is not None:
        image = set(ctx.embedding.table.values())
        shared = [c for c in e.c1 if c in image]
        if shared and all(ctx.embedding(e.delta(c)) == c for c in shared):
            return TrivialClass('identity-type', identity_check)
    return TrivialClass('nontrivial', identity_check)


def is_complete(ctx, e):
    return e.c_fn.is_zero()


def is_injective(ctx, e):
    """Whether ``s_hat`` separates the gauge orbits of ``x``."""
    return invariance_report(ctx.gau_hat, e.s_hat, e.x).quotient_injective


def is_small(ctx, e):
    """Whether the correction subspace lies in ``conn_hat + omega0``."""
    return e.c1.issubset(ctx.core)


def is_pointed(ctx, e):
    """Whether ``omega0`` sits over ``d0`` with ``s_hat(omega0) = base_s(d0)``."""
    if e.s_hat(ctx.omega0) != ctx.base_s(ctx.d0):
        return False
    return ctx.omega0 not in e.c1 or e.delta(ctx.omega0) == ctx.d0


def completion(ctx, e):
    """The complete extension obtained by dropping the correction term.

    Points of ``c1`` whose correction is nonzero leave the correction
    subspace; the domain and functional are kept.
    """
    if ctx.omega0 in e.c1 and e.c_fn(ctx.omega0) != 0:
        raise ZeroExcluded("the correction term does not vanish at omega0")
    c1 = e.c1.subset(c for c in e.c1 if e.c_fn(c) == 0)
    if len(c1) != len(e.c1):
        log.debug('Completion drops %d correction points', len(e.c1) - len(c1))
    return Extension(e.x, e.s_hat, c1, RatFn.zero(c1), e.delta.restrict(c1), label=e.label)


def coproduct(ctx, family, disjoint_corrections=False):
    """Coproduct of extensions whose domains meet only in the core.

    Parameters
    ----------
    ctx : ExtensionContext

    family : list of Extension

    disjoint_corrections : bool
        Also require every two correction subspaces to meet exactly in
        omega0. By default they may share points of ``conn_hat`` as long as
        ``c_fn`` and ``delta`` agree there.

    Returns
    -------
    (Extension, list of ExtMorphism)
        The glued extension and the inclusion of each member.
    """
    family = list(family)
    if not family:
        raise DomainMismatch("coproduct of an empty family")
    core = set(ctx.core)
    for a, b in itertools.combinations(range(len(family)), 2):
        overlap = set(family[a].x) & set(family[b].x)
        if overlap != core:
            extra = sorted(overlap - core) or sorted(core - overlap)
            raise OverlapViolation(
                f"domains of members {a} and {b} overlap outside the core at {extra[0]!r}")
        shared = sorted(set(family[a].c1) & set(family[b].c1) - {ctx.omega0})
        if disjoint_corrections and shared:
            raise OverlapViolation(
                f"correction subspaces of members {a} and {b} share {shared[0]!r}")

    s_table, c_table, d_table = {}, {}, {}
    for k, e in enumerate(family):
        for x, v in e.s_hat.items():
            if s_table.setdefault(x, v) != v:
                raise CoreDisagreement(f"s_hat of member {k} disagrees at {x!r}")
        for c in e.c1:
            if c_table.setdefault(c, e.c_fn(c)) != e.c_fn(c):
                raise CoreDisagreement(f"c_fn of member {k} disagrees at {c!r}")
            if d_table.setdefault(c, e.delta(c)) != e.delta(c):
                raise CoreDisagreement(f"delta of member {k} disagrees at {c!r}")

    x = ctx.omega.subset(s_table)
    c1 = ctx.omega.subset(c_table)
    label = '+'.join(e.label for e in family if e.label) or None
    glued = Extension(x, RatFn(x, s_table), c1, RatFn(c1, c_table),
                      FinMap(c1, ctx.conn, d_table), label=label)
    injections = [ExtMorphism(FinMap.inclusion(e.x, x), FinMap.inclusion(e.c1, c1))
                  for e in family]
    return glued, injections


def verify_coproduct(ctx, family, glued, injections, test_objects, cfg=None,
                     budget=DEFAULT_BUDGET):
    """Check the coproduct property against every cocone into test objects.

    Returns
    -------
    CoproductVerdict
        Fails at the first cocone with zero or several mediating morphisms.
    """
    checked = 0
    for t in test_objects:
        legs = [hom_set(ctx, e, t, cfg, budget) for e in family]
        out = hom_set(ctx, glued, t, cfg, budget)
        for cocone in itertools.product(*legs):
            count = sum(1 for u in out
                        if all(inj.then(u) == m for inj, m in zip(injections, cocone)))
            checked += 1
            if count != 1:
                return CoproductVerdict(False, checked,
                                        f"cocone into {t.name} has {count} mediating morphisms")
    return CoproductVerdict(True, checked, None)


def transport_context(ctx, renaming):
    """The same context with the elements of omega renamed.

    Parameters
    ----------
    renaming : dict
        Bijection on the elements of omega; unlisted elements keep their name.
    """
    ren = {x: renaming.get(x, x) for x in ctx.omega}
    if len(set(ren.values())) != len(ren):
        raise DomainMismatch("renaming is not injective")
    omega = FinSet(ren[x] for x in ctx.omega)
    embedding = None
    if ctx.embedding is not None:
        embedding = FinMap(ctx.conn, omega, {d: ren[y] for d, y in ctx.embedding.items()})
    return ExtensionContext(omega, ren[ctx.omega0], ctx.gau_hat.relabel(ren),
                            FinSet(ren[x] for x in ctx.conn_hat), ctx.conn, ctx.d0,
                            ctx.gau, ctx.xi, ctx.base_s, embedding, name=ctx.name)


def relabel_extension(e, renaming):
    """Transport an extension along a renaming of omega."""
    def ren(x):
        return renaming.get(x, x)

    x = FinSet(ren(p) for p in e.x)
    c1 = FinSet(ren(c) for c in e.c1)
    return Extension(x, RatFn(x, {ren(p): v for p, v in e.s_hat.items()}),
                     c1, RatFn(c1, {ren(c): v for c, v in e.c_fn.items()}),
                     FinMap(c1, e.delta.codomain, {ren(c): d for c, d in e.delta.items()}),
                     label=e.label)
