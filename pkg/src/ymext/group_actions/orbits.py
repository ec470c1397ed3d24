"""
Orbit decompositions, quotient maps and injectivity of functionals on
orbit spaces.
"""
import itertools
import logging
from collections import namedtuple

from ..basic_utils import product_size
from ..errors import DomainMismatch, NotInvariant, SearchBudgetExceeded
from ..finite_sets.finite_class import FinMap, FinSet

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["UnionFind", "orbits", "quotient_map", "invariance_report",
           "is_equivariant", "maximal_injective_subsets", "InvarianceReport",
           "MaximalSubsets"]

InvarianceReport = namedtuple(
    'InvarianceReport', ['invariant_subset', 'invariant_fn', 'quotient_injective'])

MaximalSubsets = namedtuple(
    'MaximalSubsets', ['canonical', 'all_maximal', 'core_feasible', 'unique'])


class UnionFind:
    """Disjoint-set forest over a finite collection."""

    def __init__(self, X):
        self.parent = {x: x for x in X}
        self.rank = {x: 0 for x in X}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def blocks(self, order):
        """The partition, blocks and their members listed along ``order``."""
        blocks = {}
        for x in order:
            blocks.setdefault(self.find(x), []).append(x)
        return list(blocks.values())


def orbits(a, subset=None):
    """Orbit decomposition of an invariant subset.

    Parameters
    ----------
    a : GroupAction

    subset : FinSet, optional
        Defaults to the whole carrier.

    Returns
    -------
    list of FinSet
        Orbits ordered by their least element in carrier order.
    """
    if subset is None:
        subset = a.carrier
    if not subset.issubset(a.carrier):
        raise DomainMismatch("orbits of a set outside the carrier")
    subset = a.carrier.subset(subset)
    if not a.is_invariant(subset):
        raise NotInvariant(f"{subset!r} is not invariant under the action")
    uf = UnionFind(subset)
    for g in a.group:
        for x in subset:
            uf.union(x, a(g, x))
    return [FinSet(block) for block in uf.blocks(subset)]


def quotient_map(a, subset=None):
    """Projection of an invariant subset onto its orbit representatives.

    The representative of an orbit is its least element in carrier order,
    so the quotient is a subset of the carrier.

    Returns
    -------
    FinMap
        subset -> representatives
    """
    blocks = orbits(a, subset)
    reps = FinSet(block.elements[0] for block in blocks)
    table = {x: block.elements[0] for block in blocks for x in block}
    domain = FinSet(x for block in blocks for x in block).sorted_like(a.carrier)
    return FinMap(domain, reps, table)


def invariance_report(a, f, subset):
    """Invariance and quotient-injectivity of a functional on a subset.

    Parameters
    ----------
    a : GroupAction

    f : RatFn or FinMap
        Defined on (at least) ``subset``.

    subset : FinSet

    Returns
    -------
    InvarianceReport
        ``invariant_subset``: the action preserves ``subset``;
        ``invariant_fn``: ``f(g.x) = f(x)`` whenever both sides lie in
        ``subset``; ``quotient_injective``: both hold and distinct orbits
        carry distinct values.
    """
    if not subset.issubset(a.carrier) or not subset.issubset(f.domain):
        raise DomainMismatch("subset is not inside both the carrier and the domain")
    subset = a.carrier.subset(subset)
    invariant_subset = a.is_invariant(subset)
    invariant_fn = all(f(a(g, x)) == f(x)
                       for g in a.group for x in subset if a(g, x) in subset)
    quotient_injective = False
    if invariant_subset and invariant_fn:
        values = [f(block.elements[0]) for block in orbits(a, subset)]
        quotient_injective = len(set(values)) == len(values)
    return InvarianceReport(invariant_subset, invariant_fn, quotient_injective)


def is_equivariant(f, a, b, hom=None):
    """Whether ``f(g.x) = phi(g).f(x)`` for all g and x.

    Parameters
    ----------
    f : FinMap
        From the carrier of ``a`` to the carrier of ``b``.

    a, b : GroupAction

    hom : GroupHom, optional
        ``phi``; the identity when omitted (then both groups must agree).
    """
    if f.domain != a.carrier or not f.codomain.issubset(b.carrier):
        raise DomainMismatch("map does not go between the action carriers")
    if hom is None:
        if a.group != b.group:
            raise DomainMismatch("actions of different groups need a homomorphism")
        phi = {g: g for g in a.group}
    else:
        phi = hom.table
    return all(f(a(g, x)) == b(phi[g], f(x)) for g in a.group for x in a.carrier)


def maximal_injective_subsets(a, f, required_core=None, budget=None):
    """Maximal invariant subsets on which ``f`` is quotient-injective.

    A subset qualifies when it is a union of orbits on each of which ``f``
    is constant, with distinct orbits carrying distinct values, and it
    contains ``required_core``.

    Parameters
    ----------
    a : GroupAction

    f : RatFn
        Defined on the whole carrier.

    required_core : FinSet, optional
        Invariant subset every answer must contain.

    budget : int, optional
        Largest number of maximal subsets to list.

    Returns
    -------
    MaximalSubsets
        ``canonical`` is the greedy answer that takes orbits in the order of
        their least element; it is also the first entry of ``all_maximal``.
        ``core_feasible`` is False (and the lists empty) when ``f`` is not
        quotient-injective on the core itself.
    """
    core = FinSet() if required_core is None else a.carrier.subset(required_core)
    if not a.is_invariant(core):
        raise NotInvariant("required core is not invariant")
    if not core_ok(a, f, core):
        log.info('Functional is not quotient-injective on the required core')
        return MaximalSubsets(None, [], False, False)

    core_values = {f(x) for x in core}
    groups = {}
    for block in orbits(a):
        if block.elements[0] in core:
            continue
        values = {f(x) for x in block}
        if len(values) != 1:
            continue
        (value,) = values
        if value in core_values:
            continue
        groups.setdefault(value, []).append(block)

    choices = list(groups.values())
    size = product_size(choices)
    if budget is not None and size > budget:
        raise SearchBudgetExceeded("maximal injective subsets", size, budget)

    all_maximal = []
    for pick in itertools.product(*choices):
        members = set(core)
        for block in pick:
            members.update(block)
        all_maximal.append(a.carrier.subset(members))
    unique = len(all_maximal) == 1
    if not unique:
        log.info('%d maximal injective invariant subsets; using the canonical one',
                 len(all_maximal))
    return MaximalSubsets(all_maximal[0], all_maximal, True, unique)


def core_ok(a, f, core):
    """Whether ``f`` is invariant and quotient-injective on the invariant ``core``."""
    if not len(core):
        return True
    return invariance_report(a, f, core).quotient_injective
