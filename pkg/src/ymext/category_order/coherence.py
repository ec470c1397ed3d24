"""
The subclass generated by a family of extended domains, and the
coherence condition on a class relative to such a family.
"""
import itertools
import logging
from collections import namedtuple

from ..basic_utils import powerset
from ..errors import CoreDisagreement, OverlapViolation
from ..extensions.extension_ops import coproduct, null_extension
from ..extensions.morphisms import is_isomorphism
from .order import build_preorder, initial_objects, is_gaunt, is_total, unique_morphism_order

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["READINGS", "class_E_of_I", "coherence_check", "CoherenceVerdict"]

READINGS = ('literal', 'coproduct')

CoherenceVerdict = namedtuple(
    'CoherenceVerdict',
    ['holds', 'mode', 'coproducts_ok', 'total', 'gaunt', 'witness', 'cause',
     'families_checked', 'initial_objects'])


def class_E_of_I(cl, i_card, reading='literal'):
    """Union of the subclasses of ``cl`` of size at most ``i_card``.

    Parameters
    ----------
    cl : ExtClass

    i_card : int

    reading : {'literal', 'coproduct'}
        'literal' takes the union of all subclasses with at most ``i_card``
        members, which is ``cl`` itself for ``i_card >= 1`` and empty for
        ``i_card = 0``. 'coproduct' gives the null extension together with
        every coproduct of at most ``i_card`` members that exists.

    Returns
    -------
    ExtClass
        A view sharing the hom-set cache of ``cl``.
    """
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if reading == 'literal':
        indices = range(len(cl)) if i_card >= 1 else []
        return cl.subclass(indices, name=f"E({i_card})")

    extra = [null_extension(cl.context)]
    for size in range(1, min(i_card, len(cl)) + 1):
        for family in itertools.combinations(cl.members, size):
            try:
                glued, _ = coproduct(cl.context, family)
            except (CoreDisagreement, OverlapViolation):
                continue
            if glued not in extra:
                extra.append(glued)
    return cl.subclass(extra=extra, name=f"E({i_card})")


def _member_like(cl, e):
    """Index of a member equal or isomorphic to ``e``, or None."""
    if e in cl.members:
        return cl.members.index(e)
    for k, m in enumerate(cl.members):
        if any(is_isomorphism(cl.context, e, m, h, cl.cfg) for h in cl.hom_between(e, m)):
            return k
    return None


def coherence_check(cl, domains, mode='maximality', reading='literal'):
    """Coherence of a class relative to a family of extended domains.

    Parameters
    ----------
    cl : ExtClass

    domains : list of FinSet
        The family ``I``.

    mode : {'maximality', 'universality'}

    reading : str
        How the generated subclass is read, see `class_E_of_I`.

    Returns
    -------
    CoherenceVerdict
        Holds iff every family of members indexed by a nonempty ``J`` in
        ``I`` has its coproduct in ``cl``, and the order on the generated
        subclass is total (for universality: the class is gaunt and the
        unique-morphism order is total). Initial objects of ``cl`` are
        reported for the empty family but never required.
    """
    if mode not in ('maximality', 'universality'):
        raise ValueError(f"unknown coherence mode {mode!r}")
    initial = [cl[k].name for k in initial_objects(cl)]
    by_domain = [[e for e in cl.members if e.x == d] for d in domains]

    checked = 0
    for subset in powerset(range(len(domains))):
        if not subset:
            continue
        for family in itertools.product(*(by_domain[k] for k in subset)):
            checked += 1
            names = [e.name for e in family]
            try:
                glued, _ = coproduct(cl.context, family)
            except (CoreDisagreement, OverlapViolation) as err:
                return CoherenceVerdict(False, mode, False, None, None, names,
                                        f"coproduct fails: {err}", checked, initial)
            if _member_like(cl, glued) is None:
                return CoherenceVerdict(False, mode, False, None, None, names,
                                        "coproduct is not in the class", checked, initial)
    log.debug('%d coproduct families checked', checked)

    generated = class_E_of_I(cl, len(domains), reading)
    total, pair = is_total(build_preorder(generated))
    if not total:
        witness = [generated[pair[0]].name, generated[pair[1]].name]
        return CoherenceVerdict(False, mode, True, False, None, witness,
                                "order on the generated class is not total", checked, initial)
    if mode == 'maximality':
        return CoherenceVerdict(True, mode, True, True, None, None, None, checked, initial)

    if not is_gaunt(generated):
        return CoherenceVerdict(False, mode, True, True, False, None,
                                "generated class is not gaunt", checked, initial)
    total, pair = is_total(unique_morphism_order(generated))
    if not total:
        witness = [generated[pair[0]].name, generated[pair[1]].name]
        return CoherenceVerdict(False, mode, True, False, True, witness,
                                "unique-morphism order is not total", checked, initial)
    return CoherenceVerdict(True, mode, True, True, True, None, None, checked, initial)
