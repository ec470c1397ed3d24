"""
Composition, sections, pullbacks and coproducts of finite sets, with an
exhaustive checker of their universal properties.
"""
import itertools
import logging
from collections import namedtuple

from ..basic_utils import product_size
from ..errors import DomainMismatch, InvalidStructure, NotSurjective, SearchBudgetExceeded
from .finite_class import FinMap, FinSet, pair_name, tag_name

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["compose", "map_properties", "all_maps", "enumerate_sections",
           "set_pullback", "disjoint_union", "verify_universal",
           "MapProperties", "UniversalVerdict"]

MapProperties = namedtuple('MapProperties', ['injective', 'surjective'])

UniversalVerdict = namedtuple(
    'UniversalVerdict', ['holds', 'kind', 'cones_checked', 'failure'])

# Largest test object used when none is requested.
DEFAULT_TEST_SIZE = {'pullback': 2, 'coproduct': 4, 'terminal': 4}


def compose(f, g):
    """Composite ``g o f``.

    Parameters
    ----------
    f : FinMap
        First map, A -> B.

    g : FinMap
        Second map, B -> C.

    Returns
    -------
    FinMap
        A -> C
    """
    if f.codomain != g.domain:
        raise DomainMismatch(
            f"cannot compose: codomain {f.codomain!r} is not domain {g.domain!r}")
    return FinMap(f.domain, g.codomain, {x: g(y) for x, y in f.items()})


def map_properties(f):
    return MapProperties(f.is_injective(), f.is_surjective())


def all_maps(domain, codomain):
    """Every FinMap ``domain -> codomain``, in lexicographic order."""
    for values in itertools.product(codomain.elements, repeat=len(domain)):
        yield FinMap(domain, codomain, zip(domain.elements, values))


def enumerate_sections(p, budget=None):
    """All sections of a surjection.

    Parameters
    ----------
    p : FinMap
        A -> B, which must be surjective.

    budget : int or None
        Largest number of sections to produce.

    Returns
    -------
    list of FinMap
        Every ``s: B -> A`` with ``p o s = id``; there are exactly
        the product of the fiber sizes of them.
    """
    fibers = [p.fiber(b).elements for b in p.codomain]
    empty = [b for b, fib in zip(p.codomain, fibers) if not fib]
    if empty:
        raise NotSurjective(f"no section: empty fiber over {empty[0]!r}")
    size = product_size(fibers)
    if budget is not None and size > budget:
        raise SearchBudgetExceeded("sections", size, budget)
    sections = [FinMap(p.codomain, p.domain, zip(p.codomain.elements, choice))
                for choice in itertools.product(*fibers)]
    log.debug('%d sections over %d fibers', len(sections), len(fibers))
    return sections


def set_pullback(f, g):
    """Pullback of a cospan ``A -f-> C <-g- B``.

    Returns
    -------
    (FinSet, FinMap, FinMap)
        The set of pairs ``(a, b)`` with ``f(a) = g(b)``, ordered by ``a``
        then ``b``, and its two projections.
    """
    if f.codomain != g.codomain:
        raise DomainMismatch("pullback of maps with different codomains")
    pairs = [(a, b) for a in f.domain for b in g.domain if f(a) == g(b)]
    names = [pair_name(a, b) for a, b in pairs]
    if len(set(names)) != len(names):
        raise InvalidStructure("element names are ambiguous as pairs")
    pb = FinSet(names)
    pi1 = FinMap(pb, f.domain, zip(names, (a for a, _ in pairs)))
    pi2 = FinMap(pb, g.domain, zip(names, (b for _, b in pairs)))
    return pb, pi1, pi2


def disjoint_union(sets):
    """Coproduct of finite sets with its injections.

    Elements of the k-th summand are tagged ``x@k``.
    """
    sets = list(sets)
    elements = [tag_name(x, k) for k, s in enumerate(sets) for x in s]
    union = FinSet(elements)
    injections = [FinMap(s, union, {x: tag_name(x, k) for x in s})
                  for k, s in enumerate(sets)]
    return union, injections


def _test_objects(max_size):
    return [FinSet(f"t{k}" for k in range(n)) for n in range(max_size + 1)]


def _mediating_count(obj, legs, cone, target):
    """Number of maps ``u: obj -> T`` with ``u o leg_k = cone_k`` for all k.

    Each leg forces the values of ``u`` on its image; the count is zero if
    two legs force different values at one point, and otherwise every
    unforced point is free.
    """
    forced = {}
    for leg, arrow in zip(legs, cone):
        for x, y in leg.items():
            if forced.setdefault(y, arrow(x)) != arrow(x):
                return 0
    return len(target) ** (len(obj) - len(forced))


def _noncommuting(obj, legs, diagram):
    """Why the square ``f o pi1 = g o pi2`` fails on ``obj``, or None."""
    (pi1, pi2), (f, g) = legs, diagram
    if pi1.codomain != f.domain or pi2.codomain != g.domain:
        return "legs do not land in the domains of the cospan"
    for p in obj:
        if f(pi1(p)) != g(pi2(p)):
            return f"square does not commute at {p!r}: {f(pi1(p))!r} != {g(pi2(p))!r}"
    return None


def verify_universal(kind, data, max_test_size=None, budget=None):
    """Exhaustively verify a universal property.

    Parameters
    ----------
    kind : {'pullback', 'coproduct', 'terminal'}

    data : dict
        ``object`` (FinSet) plus, for a pullback, ``legs = (pi1, pi2)``
        and ``diagram = (f, g)``; for a coproduct, ``legs`` (the
        injections) and ``diagram`` (the summands).

    max_test_size : int, optional
        Competing cones are drawn from test sets of every size up to this.

    Returns
    -------
    UniversalVerdict
        ``holds`` is False as soon as one competitor has zero or several
        mediating maps; ``failure`` then describes it.
    """
    if max_test_size is None:
        max_test_size = DEFAULT_TEST_SIZE[kind]
    obj = data['object']
    checked = 0
    if kind == 'pullback':
        failure = _noncommuting(obj, data['legs'], data['diagram'])
        if failure is not None:
            return UniversalVerdict(False, kind, 0, failure)
    for test in _test_objects(max_test_size):
        if kind == 'terminal':
            count = len(obj) ** len(test)
            checked += 1
            if count != 1:
                return UniversalVerdict(False, kind, checked,
                                        f"{count} maps from a set of size {len(test)}")
            continue

        if kind == 'pullback':
            f, g = data['diagram']
            pi1, pi2 = data['legs']
            factors = [list(all_maps(test, f.domain)), list(all_maps(test, g.domain))]
        elif kind == 'coproduct':
            pieces = data['diagram']
            factors = [list(all_maps(piece, test)) for piece in pieces]
        else:
            raise ValueError(f"unknown universal property {kind!r}")
        if budget is not None and product_size(factors) > budget:
            raise SearchBudgetExceeded(f"{kind} cones", product_size(factors), budget)

        for cone in itertools.product(*factors):
            if kind == 'pullback':
                a, b = cone
                if compose(a, f) != compose(b, g):
                    continue
                # u(t) must be a pair over (a(t), b(t)); count them pointwise.
                count = 1
                for t in test:
                    count *= sum(1 for p in obj if pi1(p) == a(t) and pi2(p) == b(t))
            else:
                count = _mediating_count(obj, data["legs"], cone, test)
            checked += 1
            if count != 1:
                return UniversalVerdict(False, kind, checked,
                                        f"cone into a set of size {len(test)} has "
                                        f"{count} mediating maps")
    log.debug('%s property verified against %d cones', kind, checked)
    return UniversalVerdict(True, kind, checked, None)
