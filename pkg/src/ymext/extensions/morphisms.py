"""
Morphisms of extensions: the constraint predicates, composition, and the
exhaustive hom-set search.

The search enumerates candidate maps ``f`` slot by slot. With
``EQUIVARIANCE`` the slots are orbit representatives of ``x1`` and ``f`` is
extended along each orbit; otherwise the slots are the points of ``x1``.
Every constraint that can be decided pointwise prunes the candidate images
of a slot before the cartesian product is formed. ``g`` is forced by ``f``
under ``INCLUSION_SQUARE`` and enumerated separately otherwise.
"""
import itertools
import logging
import time
from multiprocessing import Pool

from ..basic_utils import product_size, split_candidates
from ..constraints import (DEFAULT_BUDGET, DELTA_SQUARE, EQUIVARIANCE,
                           INCLUSION_SQUARE, SCALAR_C, SCALAR_S, interpret_constraints)
from ..errors import SearchBudgetExceeded
from ..finite_sets.finite_class import FinMap
from ..group_actions.orbits import UnionFind, orbits
from .extension_class import ExtMorphism

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["is_morphism", "morphism_violations", "identity_morphism",
           "compose_morphisms", "is_isomorphism", "is_monomorphism",
           "hom_set", "iso_classes"]


def morphism_violations(ctx, e1, e2, m, cfg=None):
    """Names of the enforced constraints that ``m`` violates.

    Shape (``f: x1 -> x2``, ``g: c1_1 -> c1_2``) is always required and
    reported as ``'SHAPE'``.
    """
    cfg = interpret_constraints(cfg)
    f, g = m.f, m.g
    if (f.domain != e1.x or f.codomain != e2.x
            or g.domain != e1.c1 or g.codomain != e2.c1):
        return ['SHAPE']
    failed = []
    a = ctx.gau_hat
    if cfg & EQUIVARIANCE:
        if any(a(h, x) in f.domain and f(a(h, x)) != a(h, f(x))
               for h in a.group for x in f.domain):
            failed.append('EQUIVARIANCE')
    if cfg & INCLUSION_SQUARE:
        if any(c not in f.domain or f(c) != g(c) for c in g.domain):
            failed.append('INCLUSION_SQUARE')
    if cfg & DELTA_SQUARE:
        if any(e2.delta(g(c)) != e1.delta(c) for c in g.domain):
            failed.append('DELTA_SQUARE')
    if cfg & SCALAR_C:
        if any(e2.c_fn(g(c)) != e1.c_fn(c) for c in g.domain):
            failed.append('SCALAR_C')
    if cfg & SCALAR_S:
        if any(e2.s_hat(f(x)) != e1.s_hat(x) for x in f.domain):
            failed.append('SCALAR_S')
    return failed


def is_morphism(ctx, e1, e2, m, cfg=None):
    return not morphism_violations(ctx, e1, e2, m, cfg)


def identity_morphism(e):
    return ExtMorphism.identity(e)


def compose_morphisms(m1, m2):
    """``m2 o m1``"""
    return m1.then(m2)


def is_isomorphism(ctx, e1, e2, m, cfg=None):
    """Whether ``m`` is a morphism with a two-sided inverse morphism."""
    if not is_morphism(ctx, e1, e2, m, cfg) or not m.is_bijective():
        return False
    inverse = ExtMorphism(m.f.inverse(), m.g.inverse())
    return is_morphism(ctx, e2, e1, inverse, cfg)


def is_monomorphism(ctx, e1, e2, m, test_objects=None, cfg=None, budget=DEFAULT_BUDGET):
    """Left-cancellability of ``m`` against morphisms from ``test_objects``.

    Decided exhaustively: for every test object ``t`` no two distinct
    morphisms ``t -> e1`` may have the same composite with ``m``. Without
    test objects the sufficient condition that ``f`` and ``g`` are both
    injective is used.
    """
    if test_objects is None:
        return m.f.is_injective() and m.g.is_injective()
    for t in test_objects:
        seen = set()
        for h in hom_set(ctx, t, e1, cfg, budget):
            composite = h.then(m)
            if composite in seen:
                return False
            seen.add(composite)
    return True


class _HomSearch:
    """Candidate images per slot for the morphisms ``e1 -> e2``."""

    def __init__(self, ctx, e1, e2, cfg):
        self.e1 = e1
        self.e2 = e2
        self.cfg = cfg
        self.action = ctx.gau_hat
        a = self.action
        if cfg & EQUIVARIANCE:
            # Transversal: how each point of an orbit is reached from its rep.
            self.slots = []
            self.transversal = {}
            for block in orbits(a, e1.x):
                rep = block.elements[0]
                reach = {}
                for h in a.group:
                    reach.setdefault(a(h, rep), h)
                self.slots.append(rep)
                self.transversal[rep] = list(reach.items())
            self.choices = [self._rep_candidates(rep) for rep in self.slots]
        else:
            self.slots = list(e1.x)
            self.transversal = None
            self.choices = [[y for y in e2.x if self._point_ok(x, y)] for x in self.slots]
        self.g_choices = None
        if not cfg & INCLUSION_SQUARE:
            self.g_choices = [[y for y in e2.c1 if self._correction_ok(c, y)] for c in e1.c1]

    def _correction_ok(self, c, y):
        if self.cfg & DELTA_SQUARE and self.e2.delta(y) != self.e1.delta(c):
            return False
        if self.cfg & SCALAR_C and self.e2.c_fn(y) != self.e1.c_fn(c):
            return False
        return True

    def _point_ok(self, x, y):
        if y not in self.e2.x:
            return False
        if self.cfg & SCALAR_S and self.e2.s_hat(y) != self.e1.s_hat(x):
            return False
        if self.cfg & INCLUSION_SQUARE and x in self.e1.c1:
            if y not in self.e2.c1 or not self._correction_ok(x, y):
                return False
        return True

    def _rep_candidates(self, rep):
        a = self.action
        stabilizer = [h for h in a.group if a(h, rep) == rep]
        found = []
        for y in self.e2.x:
            if any(a(h, y) != y for h in stabilizer):
                continue
            if all(self._point_ok(x, a(h, y)) for x, h in self.transversal[rep]):
                found.append(y)
        return found

    def size(self):
        size = product_size(self.choices)
        if self.g_choices is not None:
            size *= product_size(self.g_choices)
        return size

    def _expand(self, pick):
        if self.transversal is None:
            return dict(zip(self.slots, pick))
        a = self.action
        table = {}
        for rep, y in zip(self.slots, pick):
            for x, h in self.transversal[rep]:
                table[x] = a(h, y)
        return table

    def run(self, first=None):
        choices = list(self.choices)
        if first is not None:
            choices[0] = first
        found = []
        for pick in itertools.product(*choices):
            f = FinMap(self.e1.x, self.e2.x, self._expand(pick))
            if self.g_choices is None:
                g = FinMap(self.e1.c1, self.e2.c1, {c: f(c) for c in self.e1.c1})
                found.append(ExtMorphism(f, g))
                continue
            for gpick in itertools.product(*self.g_choices):
                found.append(ExtMorphism(f, FinMap(self.e1.c1, self.e2.c1,
                                                   zip(self.e1.c1.elements, gpick))))
        return found


def _search_slice(ctx, e1, e2, cfg, first):
    return _HomSearch(ctx, e1, e2, cfg).run(first)


def hom_set(ctx, e1, e2, cfg=None, budget=DEFAULT_BUDGET, max_cores='none'):
    """All morphisms ``e1 -> e2`` satisfying exactly the constraints of ``cfg``.

    Parameters
    ----------
    ctx : ExtensionContext

    e1, e2 : Extension

    cfg : int or str
        Morphism constraints, see `ymext.constraints`.

    budget : int
        The search refuses to start when ``|x2| ** |x1|`` exceeds it.

    max_cores : str
        'none', 'quarter', 'half' or 'all'; the candidates of the first slot
        are split among worker processes.

    Returns
    -------
    list of ExtMorphism
        In lexicographic order of the slot images; the order does not
        depend on ``max_cores``.
    """
    cfg = interpret_constraints(cfg)
    naive = len(e2.x) ** len(e1.x)
    if naive > budget:
        raise SearchBudgetExceeded("hom set", naive, budget)
    search = _HomSearch(ctx, e1, e2, cfg)
    if search.size() > budget:
        raise SearchBudgetExceeded("hom set", search.size(), budget)

    if not search.choices:
        return search.run()
    pieces = split_candidates(search.choices[0], max_cores)
    if len(pieces) < 2:
        return search.run()

    start = time.time()
    with Pool(processes=len(pieces)) as pool:
        results = pool.starmap(_search_slice, [(ctx, e1, e2, cfg, piece) for piece in pieces])
    found = [m for part in results for m in part]
    log.debug('Hom-set search over %d slices: %d morphisms in %g sec',
              len(pieces), len(found), time.time() - start)
    return found


def iso_classes(ctx, members, cfg=None, budget=DEFAULT_BUDGET, hom=None):
    """Partition a list of extensions into isomorphism classes.

    Parameters
    ----------
    members : list of Extension

    hom : callable, optional
        ``hom(i, j)`` returning the hom set between members ``i`` and ``j``;
        lets a caller share a cache.

    Returns
    -------
    list of list of int
        Blocks of member indices, ordered by their least index.
    """
    if hom is None:
        def hom(i, j):
            return hom_set(ctx, members[i], members[j], cfg, budget)
    uf = UnionFind(range(len(members)))
    for i, j in itertools.combinations(range(len(members)), 2):
        if uf.find(i) == uf.find(j):
            continue
        if any(is_isomorphism(ctx, members[i], members[j], m, cfg) for m in hom(i, j)):
            uf.union(i, j)
    return uf.blocks(range(len(members)))
