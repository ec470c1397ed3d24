"""
Class membership predicates, the existence and obstruction reports, and
exhaustive enumeration of the classes Comp, Inj, Small, Pb, Coh and SCoh
over a context.
"""
import itertools
import logging
import time
from collections import namedtuple

from ..basic_utils import parse_rational, powerset, product_size
from ..constraints import DEFAULT_BUDGET
from ..category_order.ext_class import ExtClass
from ..errors import InvalidStructure, SearchBudgetExceeded
from ..extensions.extension_class import Extension
from ..extensions.extension_ops import (classify_trivial, is_complete, is_injective, is_pointed,
                                        is_small, validate_extension)
from ..finite_sets.finite_class import FinMap, RatFn
from ..group_actions.orbits import invariance_report, orbits
from .gauge import gauge_fixings, pullback_locus, pullback_type_extension

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["KINDS", "DEFAULT_PALETTE", "is_pullback_type", "is_coherent",
           "obstruction_report", "existence_report", "admissible_domains",
           "palette_functionals", "build_class", "ObstructionReport", "ExistenceReport"]

KINDS = ('Comp', 'Inj', 'Small', 'Pb', 'Coh', 'SCoh')

# Predicates a member of each class must satisfy, in reporting order.
KIND_PREDICATES = {
    'Comp': ('complete',),
    'Inj': ('injective',),
    'Small': ('small',),
    'Pb': ('complete', 'pullback-type'),
    'Coh': ('complete', 'injective', 'pullback-type'),
    'SCoh': ('complete', 'injective', 'pullback-type', 'small'),
}

DEFAULT_PALETTE = ('0', '1')

ObstructionReport = namedtuple(
    'ObstructionReport', ['kind', 'member', 'failed', 'only_injectivity'])

ExistenceReport = namedtuple('ExistenceReport', ['holds', 'kinds', 'nontrivial'])


def is_pullback_type(ctx, e, budget=None):
    """The first gauge fixing whose matching locus contains ``c1 - omega0``.

    Returns
    -------
    GaugeFixing or None
        None when ``e`` is not complete, ``omega0`` does not sit over
        ``d0``, its functional is not invariant, or no fixing works
        (including when ``conn_hat`` is empty).
    """
    if not is_complete(ctx, e) or not len(ctx.conn_hat) or not is_pointed(ctx, e):
        return None
    report = invariance_report(ctx.gau_hat, e.s_hat, e.x)
    if not (report.invariant_subset and report.invariant_fn):
        return None
    needed = set(e.c1) - {ctx.omega0}
    for sigma in gauge_fixings(ctx, budget):
        if needed <= set(pullback_locus(ctx, e.s_hat, sigma).image):
            return sigma
    return None


def is_coherent(ctx, e, budget=None):
    return is_injective(ctx, e) and is_pullback_type(ctx, e, budget) is not None


_PREDICATES = {
    'complete': is_complete,
    'injective': is_injective,
    'small': is_small,
    'pullback-type': lambda ctx, e: is_pullback_type(ctx, e) is not None,
}


def obstruction_report(ctx, e, kind):
    """Which defining predicates of ``kind`` the extension fails.

    Returns
    -------
    ObstructionReport
        ``only_injectivity`` is set for the coherent kinds: True when
        injectivity is the single failing predicate.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown class kind {kind!r}")
    failed = [name for name in KIND_PREDICATES[kind] if not _PREDICATES[name](ctx, e)]
    only = None
    if kind in ('Coh', 'SCoh'):
        only = failed == ['injective']
    return ObstructionReport(kind, not failed, failed, only)


def existence_report(cl):
    """Whether a class holds a nontrivial member.

    Returns
    -------
    ExistenceReport
        ``kinds`` maps member names to their trivial-type classification.
    """
    kinds = {e.name: classify_trivial(cl.context, e).kind for e in cl}
    nontrivial = [name for name, kind in kinds.items() if kind == 'nontrivial']
    return ExistenceReport(bool(nontrivial), kinds, nontrivial)


def admissible_domains(ctx, budget=DEFAULT_BUDGET):
    """Invariant subsets of omega containing ``conn_hat + omega0``.

    Listed as the core together with each subset of the remaining orbits,
    in bitmask order.
    """
    core = ctx.core
    extra = [block for block in orbits(ctx.gau_hat) if block.elements[0] not in core]
    if 2 ** len(extra) > budget:
        raise SearchBudgetExceeded("extended domains", 2 ** len(extra), budget)
    domains = []
    for pick in powerset(extra):
        points = set(core)
        for block in pick:
            points.update(block)
        domains.append(ctx.omega.subset(points))
    return domains


def palette_functionals(ctx, x, palette, budget=DEFAULT_BUDGET):
    """Invariant functionals on ``x`` with values in ``palette``, zero at omega0."""
    blocks = [block for block in orbits(ctx.gau_hat.restrict(x)) if ctx.omega0 not in block]
    values = [parse_rational(v) for v in palette]
    size = len(values) ** len(blocks)
    if size > budget:
        raise SearchBudgetExceeded("palette functionals", size, budget)
    found = []
    for pick in itertools.product(values, repeat=len(blocks)):
        table = {ctx.omega0: 0}
        for block, v in zip(blocks, pick):
            table.update((p, v) for p in block)
        found.append(RatFn(x, table))
    return found


def _functionals_on(ctx, x, functionals, palette, budget):
    if functionals is None:
        return palette_functionals(ctx, x, palette, budget)
    found = []
    for s in functionals:
        if not x.issubset(s.domain):
            continue
        report = invariance_report(ctx.gau_hat, s, x)
        if report.invariant_subset and report.invariant_fn and s.restrict(x) not in found:
            found.append(s.restrict(x))
    return found


def _pullback_members(ctx, functionals, palette, budget):
    fixings = gauge_fixings(ctx, budget)
    members = []
    for x in admissible_domains(ctx, budget):
        candidates = _functionals_on(ctx, x, functionals, palette, budget)
        if len(candidates) * len(fixings) > budget:
            raise SearchBudgetExceeded("pullback constructions",
                                       len(candidates) * len(fixings), budget)
        for s in candidates:
            if not all(invariance_report(ctx.gau_hat, s, x)) or s(ctx.omega0) != 0:
                continue
            for sigma in fixings:
                e, _ = pullback_type_extension(ctx, x, s, sigma)
                if e not in members:
                    members.append(e)
    return members


def _palette_members(ctx, kind, functionals, palette, budget):
    """Valid extensions with any correction subspace and delta map."""
    members = []
    examined = 0
    for x in admissible_domains(ctx, budget):
        for s in _functionals_on(ctx, x, functionals, palette, budget):
            if kind == 'Inj' and not invariance_report(ctx.gau_hat, s, x).quotient_injective:
                continue
            pool = ctx.core if kind == 'Small' else x
            optional = [c for c in pool if c != ctx.omega0]
            for pick in powerset(optional):
                c1 = x.subset(set(pick) | {ctx.omega0})
                if kind == 'Comp':
                    targets = [[d for d in ctx.conn if ctx.base_s(d) == s(c)] for c in c1]
                else:
                    targets = [list(ctx.conn) for _ in c1]
                examined += product_size(targets)
                if examined > budget:
                    raise SearchBudgetExceeded("class enumeration", examined, budget)
                for images in itertools.product(*targets):
                    delta = FinMap(c1, ctx.conn, zip(c1.elements, images))
                    c_fn = RatFn(c1, {c: s(c) - ctx.base_s(delta(c)) for c in c1})
                    e = Extension(x, s, c1, c_fn, delta)
                    if validate_extension(ctx, e).valid:
                        members.append(e)
    log.debug('%d candidates examined for %s', examined, kind)
    return members


def build_class(ctx, kind, functionals=None, palette=None, cfg=None, budget=DEFAULT_BUDGET,
                max_cores='none', name=None):
    """Enumerate a class of extensions over ``ctx``.

    Parameters
    ----------
    ctx : ExtensionContext

    kind : {'Comp', 'Inj', 'Small', 'Pb', 'Coh', 'SCoh'}

    functionals : list of RatFn, optional
        Candidate extended functionals; each is used on every admissible
        domain it is defined and invariant on. Without them the functionals
        are enumerated from ``palette``.

    palette : sequence of rationals, optional
        Values of palette-enumerated functionals, which always vanish at
        omega0. Defaults to ``DEFAULT_PALETTE``.

    cfg, budget, max_cores :
        Passed on to the resulting `ExtClass`; ``budget`` also bounds the
        enumeration.

    Returns
    -------
    ExtClass
        Pb members come from `pullback_type_extension` over every
        admissible pair of domain and gauge fixing. They sit on injective
        invariant domains and their correction subspaces lie in the core,
        so Coh and SCoh enumerate the same members. Comp, Inj and Small
        enumerate correction subspaces and delta maps, with the correction
        term forced by the decomposition.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown class kind {kind!r}")
    palette = DEFAULT_PALETTE if palette is None else palette
    start = time.time()
    if kind in ('Pb', 'Coh', 'SCoh'):
        if not len(ctx.conn_hat):
            members = []
        else:
            members = _pullback_members(ctx, functionals, palette, budget)
    else:
        members = _palette_members(ctx, kind, functionals, palette, budget)

    labelled = [e.with_label(f"{kind.lower()}{k}") for k, e in enumerate(members)]
    if len(set(labelled)) != len(labelled):
        raise InvalidStructure("class enumeration produced duplicate members")
    log.info('Built %s with %d members in %g sec', kind, len(labelled), time.time() - start)
    return ExtClass(ctx, labelled, cfg, budget, max_cores, name=name or kind)
