"""
Injectivization of an extension and the retraction of coherent extensions
onto pullback-type ones.
"""
import logging
from collections import namedtuple

from ..constraints import DEFAULT_BUDGET
from ..errors import BaseNotInjective, NotCoherentInput
from ..extensions.extension_class import Extension, ExtMorphism
from ..extensions.extension_ops import (completion, is_complete, is_injective, is_pointed,
                                        is_small)
from ..extensions.morphisms import iso_classes
from ..finite_sets.finite_class import FinMap, RatFn, pair_name
from ..group_actions.orbits import core_ok, maximal_injective_subsets, orbits
from .gauge import pullback_locus, pullback_type_extension

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["injectivize", "retract_r_sigma", "retraction_report",
           "RetractionWitness", "RetractionReport"]

RetractionWitness = namedtuple('RetractionWitness', ['mu', 'mu_injective', 'pullback'])

RetractionReport = namedtuple(
    'RetractionReport',
    ['retracts', 'fixed', 'classes_before', 'classes_after', 'well_defined', 'injective'])


def injectivize(ctx, e):
    """The largest complete injective extension sitting inside ``e``.

    Parameters
    ----------
    ctx : ExtensionContext

    e : Extension
        A valid extension.

    Returns
    -------
    (Extension, ExtMorphism)
        The injective extension and its inclusion into ``e``.

    Raises
    ------
    ZeroExcluded
        The correction term of ``e`` does not vanish at omega0.
    BaseNotInjective
        ``s_hat`` already fails to separate the orbits of ``conn_hat + omega0``.
    """
    complete = completion(ctx, e)
    a = ctx.gau_hat.restrict(e.x)
    s = complete.s_hat
    core = ctx.core
    if not core_ok(a, s, core):
        raise BaseNotInjective("s_hat is not quotient-injective on conn_hat and omega0")

    lit = maximal_injective_subsets(a, s).canonical
    core_values = {s(x) for x in core}
    kept = set(core)
    dropped = []
    for block in orbits(a, lit):
        if block.elements[0] in core:
            continue
        if s(block.elements[0]) in core_values:
            dropped.append(block.elements[0])
            continue
        kept.update(block)
    if dropped:
        log.warning('Adjoining the core breaks injectivity; dropping the orbits of %s',
                    ', '.join(dropped), extra={'deviation': 'injectivize-shrink'})

    x = e.x.subset(kept)
    c1 = complete.c1.intersection(x)
    result = Extension(x, s.restrict(x), c1, RatFn.zero(c1), complete.delta.restrict(c1),
                       label=e.label)
    inclusion = ExtMorphism(FinMap.inclusion(x, e.x), FinMap.inclusion(c1, e.c1))
    log.debug('Injectivization keeps %d of %d points', len(x), len(e.x))
    return result, inclusion


def retract_r_sigma(ctx, e, sigma, return_witness=False):
    """Retract a coherent extension onto the pullback-type extension of its data.

    Parameters
    ----------
    ctx : ExtensionContext

    e : Extension
        Injective, complete and small.

    sigma : GaugeFixing

    return_witness : bool
        Also return the comparison map ``mu`` from the correction subspace
        of ``e`` into the matching locus.

    Returns
    -------
    Extension or (Extension, RetractionWitness)

    Raises
    ------
    NotCoherentInput
        ``e`` is not injective, complete and small, or ``omega0`` does not
        sit over ``d0``.
    """
    failed = [name for name, test in (('injective', is_injective), ('complete', is_complete),
                                      ('small', is_small), ('pointed', is_pointed))
              if not test(ctx, e)]
    if failed:
        raise NotCoherentInput(f"{e.name} is not {', '.join(failed)}")

    locus = pullback_locus(ctx, e.s_hat, sigma)
    points = e.c1.intersection(ctx.conn_hat)
    mu = FinMap(points, locus.pb,
                {c: pair_name(e.delta(c), locus.projection(c)) for c in points})
    mu_injective = mu.is_injective()
    if not mu_injective:
        log.warning('Correction points of %s collide in the matching locus', e.name)

    result, witness = pullback_type_extension(ctx, e.x, e.s_hat, sigma)
    result = result.with_label(f"r({e.name})")
    if return_witness:
        return result, RetractionWitness(mu, mu_injective, witness)
    return result


def retraction_report(ctx, members, sigma, cfg=None, budget=DEFAULT_BUDGET):
    """Retraction law and essential injectivity over a list of coherent members.

    Returns
    -------
    RetractionReport
        ``fixed[k]`` says whether member k is left unchanged;
        ``well_defined`` holds when isomorphic inputs have isomorphic
        retracts and ``injective`` when the converse holds.
    """
    retracts = [retract_r_sigma(ctx, e, sigma) for e in members]
    fixed = [r == e for r, e in zip(retracts, members)]
    before = iso_classes(ctx, members, cfg, budget)
    after = iso_classes(ctx, retracts, cfg, budget)
    block_before = {k: b for b, block in enumerate(before) for k in block}
    block_after = {k: b for b, block in enumerate(after) for k in block}
    pairs = [(i, j) for i in range(len(members)) for j in range(i + 1, len(members))]
    well_defined = all(block_after[i] == block_after[j] for i, j in pairs
                       if block_before[i] == block_before[j])
    injective = all(block_before[i] == block_before[j] for i, j in pairs
                    if block_after[i] == block_after[j])
    log.info('Retraction: %d members, %d iso classes before and %d after',
             len(members), len(before), len(after))
    return RetractionReport(retracts, fixed, before, after, well_defined, injective)
