"""
Preorders of extension classes and their quotients by isomorphism.

Relations are square boolean `numpy` arrays indexed by member (or iso
class) position; ``leq[i, j]`` reads "i is below j".
"""
import logging
from collections import namedtuple

import networkx as nx
import numpy as np

from ..errors import IncompatibleQuotient, NotGaunt
from ..extensions.morphisms import is_isomorphism

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["IsoPoset", "build_preorder", "iso_poset", "greatest_element",
           "terminal_objects", "initial_objects", "is_gaunt", "unique_morphism_order",
           "is_reflexive", "is_transitive", "is_total", "hasse_edges"]


IsoPoset = namedtuple('IsoPoset', ['blocks', 'representatives', 'leq', 'antisymmetric'])
IsoPoset.__doc__ = """Iso classes of a class with the induced relation.

blocks : list of list of int
    Member indices of each iso class.
representatives : list of int
    First member of each block.
leq : numpy.ndarray
    Relation between blocks.
antisymmetric : bool
    False when two non-isomorphic members map to each other.
"""


def build_preorder(cl):
    """``leq[i, j]`` is True iff there is a morphism from member i to member j."""
    n = len(cl)
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            leq[i, j] = cl.count(i, j) > 0
    return leq


def is_reflexive(leq):
    return bool(np.all(np.diag(leq)))


def is_transitive(leq):
    m = leq.astype(np.int64)
    return bool(np.all(~(m @ m > 0) | leq))


def is_total(leq):
    """Totality of a relation.

    Returns
    -------
    (bool, tuple or None)
        The verdict and, when it fails, the first incomparable pair.
    """
    comparable = leq | leq.T
    bad = np.argwhere(~comparable)
    if len(bad):
        i, j = bad[0]
        return False, (int(i), int(j))
    return True, None


def iso_poset(cl):
    """Quotient of the preorder of ``cl`` by isomorphism.

    Raises `IncompatibleQuotient` if the preorder does not respect the
    isomorphism classes.
    """
    leq = build_preorder(cl)
    blocks = cl.iso_classes()
    reps = [block[0] for block in blocks]
    for a, block_a in enumerate(blocks):
        for b, block_b in enumerate(blocks):
            values = {bool(leq[i, j]) for i in block_a for j in block_b}
            if len(values) != 1:
                raise IncompatibleQuotient(
                    f"iso classes {a} and {b} are related only for some representatives")
    quotient = leq[np.ix_(reps, reps)]
    antisymmetric = not np.any(quotient & quotient.T & ~np.eye(len(reps), dtype=bool))
    if not antisymmetric:
        log.warning('Non-isomorphic members are related both ways; the quotient is a '
                    'preorder', extra={'deviation': 'quotient-not-antisymmetric'})
    return IsoPoset(blocks, reps, quotient, antisymmetric)


def greatest_element(p):
    """Index of the first iso class above every other, or None.

    On an antisymmetric quotient the answer is the unique greatest element.
    """
    n = len(p.representatives)
    for b in range(n):
        if np.all(p.leq[:, b]):
            return b
    return None


def terminal_objects(cl):
    """Members receiving exactly one morphism from every member."""
    n = len(cl)
    return [t for t in range(n) if all(cl.count(m, t) == 1 for m in range(n))]


def initial_objects(cl):
    """Members sending exactly one morphism to every member."""
    n = len(cl)
    return [t for t in range(n) if all(cl.count(t, m) == 1 for m in range(n))]


def non_identity_isomorphism(cl):
    """First isomorphism of ``cl`` that is not an identity, or None."""
    for i in range(len(cl)):
        for j in range(len(cl)):
            for m in cl.hom(i, j):
                if i == j and m.is_identity():
                    continue
                if is_isomorphism(cl.context, cl[i], cl[j], m, cl.cfg):
                    return i, j, m
    return None


def is_gaunt(cl):
    return non_identity_isomorphism(cl) is None


def unique_morphism_order(cl):
    """``leq[i, j]`` is True iff exactly one morphism goes from i to j."""
    found = non_identity_isomorphism(cl)
    if found is not None:
        i, j, _ = found
        raise NotGaunt(f"non-identity isomorphism from {cl[i].name} to {cl[j].name}")
    n = len(cl)
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            leq[i, j] = cl.count(i, j) == 1
    return leq


def hasse_edges(p):
    """Covering pairs ``(a, b)`` of an iso poset, as a sorted list.

    Uses the transitive reduction of the strict relation, so classes
    related both ways contribute no edge.
    """
    n = len(p.representatives)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((a, b) for a in range(n) for b in range(n)
                         if a != b and p.leq[a, b] and not p.leq[b, a])
    reduced = nx.transitive_reduction(graph)
    return sorted(reduced.edges())
