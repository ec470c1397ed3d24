"""
Internal maximality and universality of one class of extensions with
respect to another, in the strict and the weak (functorial) forms, and the
density of a candidate extension.

Strict modes
------------
``maximal`` and ``universal`` ask for an object map ``mu: e0 -> e1`` such
that every other object map ``nu`` satisfies: ``hom(nu(s), mu(s))`` is
nonempty (resp. a singleton) for every ``s`` in ``e0``. Because ``nu`` is
arbitrary the condition splits per member, so a witness exists exactly
when some member ``t`` of ``e1`` receives a morphism (resp. exactly one)
from every member of ``e1``; the constant map to ``t`` is then a witness.

Weak modes
----------
``weak-maximal`` and ``weak-universal`` enumerate all functors ``e0 -> e1``
(object map plus arrow map preserving identities and composition) and ask
for a functor ``mu`` admitting a natural transformation (resp. exactly one)
from every functor ``nu``.
"""
import itertools
import logging
from collections import namedtuple

from ..basic_utils import powerset
from ..constraints import DEFAULT_BUDGET, DEFAULT_FUNCTOR_BUDGET
from ..errors import SearchBudgetExceeded
from .order import is_gaunt

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["MODES", "MaximalityVerdict", "check_maximality", "enumerate_functors",
           "count_natural_transformations", "density_check", "DensityVerdict"]

MODES = ('maximal', 'universal', 'weak-maximal', 'weak-universal', 'universal-iso')

MaximalityVerdict = namedtuple(
    'MaximalityVerdict',
    ['holds', 'mode', 'hypothesis_met', 'witness', 'counterexample', 'reason'])

DensityVerdict = namedtuple(
    'DensityVerdict', ['holds', 'mode', 'subsets_checked', 'failing_subset'])


class _Category:
    """Arrows of an `ExtClass` indexed as ``(a, b, k)``, k-th morphism a -> b."""

    def __init__(self, cl):
        self.cl = cl
        self.size = len(cl)
        self._index = {}
        self._compose = {}
        self.arrows = []
        self.identity = {}
        for a in range(self.size):
            for b in range(self.size):
                homs = cl.hom(a, b)
                self._index[(a, b)] = {m: k for k, m in enumerate(homs)}
                self.arrows.extend((a, b, k) for k in range(len(homs)))
        for a in range(self.size):
            self.identity[a] = self._index[(a, a)][cl.identity(a)]

    def count(self, a, b):
        return len(self._index[(a, b)])

    def compose(self, a, b, c, i, j):
        """Index of ``(b -j-> c) o (a -i-> b)`` in hom(a, c)."""
        key = (a, b, c, i, j)
        if key not in self._compose:
            m = self.cl.hom(a, b)[i].then(self.cl.hom(b, c)[j])
            self._compose[key] = self._index[(a, c)][m]
        return self._compose[key]

    def composable_triples(self):
        """All ``(p, q, r)`` with ``r = q o p``, arrows as ``(a, b, k)``."""
        triples = []
        for (a, b, i) in self.arrows:
            for c in range(self.size):
                for j in range(self.count(b, c)):
                    triples.append(((a, b, i), (b, c, j), (a, c, self.compose(a, b, c, i, j))))
        return triples


def enumerate_functors(e0, e1, budget=DEFAULT_FUNCTOR_BUDGET):
    """All functors between two classes regarded as categories.

    Returns
    -------
    functors : list of (tuple, dict)
        Object map (member index of e1 for each member of e0) and arrow
        map ``(a, b, k) -> k'``.

    source, target : _Category
        The indexed arrows of both classes.
    """
    c0, c1 = _Category(e0), _Category(e1)
    if c1.size ** c0.size > budget:
        raise SearchBudgetExceeded("functor object maps", c1.size ** c0.size, budget)
    arrows = [p for p in c0.arrows if p[2] != c0.identity[p[0]] or p[0] != p[1]]
    position = {p: k for k, p in enumerate(arrows)}
    checks = [[] for _ in arrows]
    for p, q, r in c0.composable_triples():
        last = max(position.get(p, -1), position.get(q, -1), position.get(r, -1))
        if last >= 0:
            checks[last].append((p, q, r))

    functors = []
    for mu in itertools.product(range(c1.size), repeat=c0.size):
        fmap = {(a, a, c0.identity[a]): c1.identity[mu[a]] for a in range(c0.size)}

        def consistent(step):
            for (a, b, i), (_, c, j), r in checks[step]:
                lhs = fmap[r]
                rhs = c1.compose(mu[a], mu[b], mu[c], fmap[(a, b, i)], fmap[(b, c, j)])
                if lhs != rhs:
                    return False
            return True

        def extend(step):
            if step == len(arrows):
                functors.append((mu, dict(fmap)))
                if len(functors) > budget:
                    raise SearchBudgetExceeded("functors", len(functors), budget)
                return
            a, b, _ = arrows[step]
            for k in range(c1.count(mu[a], mu[b])):
                fmap[arrows[step]] = k
                if consistent(step):
                    extend(step + 1)
            fmap.pop(arrows[step], None)

        extend(0)
    log.debug('%d functors between classes of sizes %d and %d',
              len(functors), c0.size, c1.size)
    return functors, c0, c1


def count_natural_transformations(c0, c1, nu, mu, limit=2):
    """Number of natural transformations ``nu => mu``, counted up to ``limit``."""
    (nu_obj, nu_arr), (mu_obj, mu_arr) = nu, mu
    n = c0.size
    by_object = [[] for _ in range(n)]
    for (a, b, k) in c0.arrows:
        by_object[max(a, b)].append((a, b, k))
    comp = [None] * n
    found = 0

    def natural(a, b, k):
        # mu(p) o u_a == u_b o nu(p)
        left = c1.compose(nu_obj[a], mu_obj[a], mu_obj[b], comp[a], mu_arr[(a, b, k)])
        right = c1.compose(nu_obj[a], nu_obj[b], mu_obj[b], nu_arr[(a, b, k)], comp[b])
        return left == right

    def extend(a):
        nonlocal found
        if found >= limit:
            return
        if a == n:
            found += 1
            return
        for k in range(c1.count(nu_obj[a], mu_obj[a])):
            comp[a] = k
            if all(natural(*p) for p in by_object[a]):
                extend(a + 1)
        comp[a] = None

    extend(0)
    return found


def _strict_check(e0, e1, mode):
    n1 = len(e1)
    if mode == 'maximal':
        def good(s, t):
            return e1.count(s, t) >= 1
    else:
        def good(s, t):
            return e1.count(s, t) == 1
    for t in range(n1):
        if all(good(s, t) for s in range(n1)):
            witness = {e.name: e1[t].name for e in e0}
            log.debug('Constant map to %s witnesses %s', e1[t].name, mode)
            return MaximalityVerdict(True, mode, True, witness, None, None)
    if n1 == 0:
        return MaximalityVerdict(False, mode, True, None, None, "no object map into an empty class")
    # Counterexample against the constant map to the first member.
    bad = next(s for s in range(n1) if not good(s, 0))
    source = e0[0].name
    trace = {'mu': {e.name: e1[0].name for e in e0},
             'nu': {e.name: e1[bad].name for e in e0},
             'at': source,
             'homs': e1.count(bad, 0)}
    kind = 'a morphism' if mode == 'maximal' else 'a unique morphism'
    return MaximalityVerdict(False, mode, True, None, trace,
                             f"no member of the class receives {kind} from every member")


def _weak_check(e0, e1, mode, budget, functor_budget):
    functors, c0, c1 = enumerate_functors(e0, e1, functor_budget)
    if not functors:
        return MaximalityVerdict(False, mode, True, None, None, "no functor between the classes")
    limit = 1 if mode == 'weak-maximal' else 2
    pairs = 0
    first_failure = None
    for mu in functors:
        failure = None
        for nu in functors:
            pairs += 1
            if pairs > budget:
                raise SearchBudgetExceeded("functor pairs", pairs, budget)
            count = count_natural_transformations(c0, c1, nu, mu, limit=limit + 1)
            if count == 0 or (mode == 'weak-universal' and count != 1):
                failure = (nu, count)
                break
        if failure is None:
            witness = {e0[a].name: e1[t].name for a, t in enumerate(mu[0])}
            return MaximalityVerdict(True, mode, True, witness, None, None)
        if first_failure is None:
            first_failure = (mu, failure)
    mu, (nu, count) = first_failure
    trace = {'mu': {e0[a].name: e1[t].name for a, t in enumerate(mu[0])},
             'nu': {e0[a].name: e1[t].name for a, t in enumerate(nu[0])},
             'transformations': count}
    return MaximalityVerdict(False, mode, True, None, trace,
                             "no functor receives natural transformations from every functor")


def check_maximality(e0, e1, mode='maximal', budget=DEFAULT_BUDGET,
                     functor_budget=DEFAULT_FUNCTOR_BUDGET):
    """Decide whether ``e0`` is internally maximal (or universal) in ``e1``.

    Parameters
    ----------
    e0, e1 : ExtClass
        Classes over the same context and constraints.

    mode : str
        One of `MODES`.

    Returns
    -------
    MaximalityVerdict
        ``witness`` maps member names of ``e0`` to member names of ``e1``;
        ``counterexample`` is a trace of the first failing pair of maps.
        ``hypothesis_met`` is False only in ``universal-iso`` mode on a
        class that is not gaunt.
    """
    if mode not in MODES:
        raise ValueError(f"unknown maximality mode {mode!r}")
    if len(e0) == 0:
        return MaximalityVerdict(True, mode, True, {}, None, "vacuous: empty source class")
    if mode == 'universal-iso':
        if not is_gaunt(e1):
            return MaximalityVerdict(False, mode, False, None, None,
                                     "hypothesis unmet: not gaunt")
        verdict = _strict_check(e0, e1, 'universal')
        return verdict._replace(mode=mode)
    if mode in ('maximal', 'universal'):
        return _strict_check(e0, e1, mode)
    return _weak_check(e0, e1, mode, budget, functor_budget)


def density_check(cl, candidate, mode='maximal', source=None, budget=DEFAULT_BUDGET,
                  functor_budget=DEFAULT_FUNCTOR_BUDGET):
    """Whether ``candidate`` makes every subclass satisfy the mode.

    For every subset ``Y`` of the members of ``cl`` the class
    ``Y + {candidate}`` is tested against ``source`` (``cl`` itself by
    default) with `check_maximality`.

    Returns
    -------
    DensityVerdict
        ``failing_subset`` names the members of the first failing ``Y``.
    """
    source = cl if source is None else source
    if len(cl) > 20:
        raise SearchBudgetExceeded("density subsets", 2 ** len(cl), 2 ** 20)
    checked = 0
    for subset in powerset(range(len(cl))):
        target = cl.subclass(subset, extra=[candidate])
        checked += 1
        verdict = check_maximality(source, target, mode, budget, functor_budget)
        if not verdict.holds:
            return DensityVerdict(False, mode, checked, [cl[k].name for k in subset])
    return DensityVerdict(True, mode, checked, None)
