"""
Finite groups given by multiplication tables, their actions on finite
sets, and homomorphisms between them.
"""
import itertools
import logging
import re
from collections import deque

from ..errors import DomainMismatch, InvalidStructure
from ..finite_sets.finite_class import FinMap, FinSet

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["FinGroup", "GroupAction", "GroupHom", "parse_cycles", "format_cycles"]


class FinGroup:
    """A finite group stored as a full multiplication table.

    Parameters
    ----------
    elements : FinSet

    mult : dict
        ``mult[(g, h)]`` is the product ``g h``.

    identity : str
    """

    def __init__(self, elements, mult, identity):
        mult = dict(mult)
        for g, h in itertools.product(elements, repeat=2):
            if mult.get((g, h)) not in elements:
                raise InvalidStructure(f"multiplication table has no element for {g}*{h}")
        if identity not in elements:
            raise InvalidStructure(f"identity {identity!r} is not a group element")
        for g in elements:
            if mult[(identity, g)] != g or mult[(g, identity)] != g:
                raise InvalidStructure(f"{identity!r} is not an identity for {g!r}")
        inverse = {}
        for g in elements:
            inv = [h for h in elements if mult[(g, h)] == identity]
            if len(inv) != 1 or mult[(inv[0], g)] != identity:
                raise InvalidStructure(f"{g!r} has no two-sided inverse")
            inverse[g] = inv[0]
        for g, h, k in itertools.product(elements, repeat=3):
            if mult[(mult[(g, h)], k)] != mult[(g, mult[(h, k)])]:
                raise InvalidStructure(f"multiplication is not associative at {g}, {h}, {k}")
        self.elements = elements
        self.mult = {key: mult[key] for key in itertools.product(elements, repeat=2)}
        self.identity = identity
        self.inverse = inverse

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FinGroup(order={len(self)})"

    def __eq__(self, other):
        if not isinstance(other, FinGroup):
            return NotImplemented
        return (self.elements == other.elements and self.identity == other.identity
                and self.mult == other.mult)

    def __hash__(self):
        return hash((self.elements, self.identity))

    def op(self, g, h):
        return self.mult[(g, h)]

    @classmethod
    def from_rows(cls, elements, rows, identity):
        """Group from rows, ``rows[g]`` listing ``g h`` for h in element order."""
        mult = {}
        for g in elements:
            row = list(rows[g])
            if len(row) != len(elements):
                raise InvalidStructure(f"row of {g!r} has {len(row)} entries, expected {len(elements)}")
            mult.update({(g, h): gh for h, gh in zip(elements, row)})
        return cls(elements, mult, identity)

    @classmethod
    def trivial(cls, name='e'):
        return cls(FinSet([name]), {(name, name): name}, name)

    @classmethod
    def cyclic(cls, n, prefix='r'):
        """Cyclic group of order ``n``; element ``r<k>`` is the k-th power."""
        names = [f"{prefix}{k}" for k in range(n)]
        mult = {(names[a], names[b]): names[(a + b) % n]
                for a in range(n) for b in range(n)}
        return cls(FinSet(names), mult, names[0])

    @classmethod
    def from_permutations(cls, carrier, generators, prefix='g'):
        """Close a list of permutations of ``carrier`` under composition.

        Elements are named ``g0`` (the identity), ``g1``, ... in breadth
        first order from the generators.

        Returns
        -------
        (FinGroup, dict)
            The group and the permutation table of each element.
        """
        ident = tuple(carrier.elements)
        gens = [tuple(p[x] for x in carrier) for p in generators]
        for perm in gens:
            if sorted(perm) != sorted(ident):
                raise InvalidStructure("generator is not a permutation of the carrier")
        seen = {ident: 0}
        order = [ident]
        queue = deque([ident])
        pos = {x: k for k, x in enumerate(carrier)}
        while queue:
            p = queue.popleft()
            for q in gens:
                # (q o p)(x) = q(p(x))
                r = tuple(q[pos[p[k]]] for k in range(len(ident)))
                if r not in seen:
                    seen[r] = len(order)
                    order.append(r)
                    queue.append(r)
        names = [f"{prefix}{k}" for k in range(len(order))]
        mult = {}
        for a, p in enumerate(order):
            for b, q in enumerate(order):
                # g_a g_b acts as g_a o g_b
                r = tuple(p[pos[q[k]]] for k in range(len(ident)))
                mult[(names[a], names[b])] = names[seen[r]]
        group = cls(FinSet(names), mult, names[0])
        perms = {names[k]: dict(zip(carrier, order[k])) for k in range(len(order))}
        log.debug('Closed %d generators to a group of order %d', len(gens), len(group))
        return group, perms


class GroupAction:
    """A left action of a `FinGroup` on a `FinSet`.

    Parameters
    ----------
    group : FinGroup

    carrier : FinSet

    act : dict
        ``act[(g, x)]`` is ``g . x``.
    """

    def __init__(self, group, carrier, act):
        act = dict(act)
        for g, x in itertools.product(group, carrier):
            if act.get((g, x)) not in carrier:
                raise InvalidStructure(f"action is undefined or leaves the carrier at {g}.{x}")
        for x in carrier:
            if act[(group.identity, x)] != x:
                raise InvalidStructure(f"identity moves {x!r}")
        for g, h, x in itertools.product(group, group, carrier):
            if act[(group.op(g, h), x)] != act[(g, act[(h, x)])]:
                raise InvalidStructure(f"action is not compatible with multiplication at {g}, {h}, {x}")
        self.group = group
        self.carrier = carrier
        self.act = {key: act[key] for key in itertools.product(group, carrier)}

    def __call__(self, g, x):
        try:
            return self.act[(g, x)]
        except KeyError:
            raise DomainMismatch(f"cannot act with {g!r} on {x!r}") from None

    def __repr__(self):
        return f"GroupAction(order={len(self.group)}, carrier={self.carrier!r})"

    def __eq__(self, other):
        if not isinstance(other, GroupAction):
            return NotImplemented
        return (self.group == other.group and self.carrier == other.carrier
                and self.act == other.act)

    def __hash__(self):
        return hash((self.group, self.carrier))

    def permutation(self, g):
        return FinMap(self.carrier, self.carrier, {x: self.act[(g, x)] for x in self.carrier})

    def orbit(self, x):
        return self.carrier.subset(self.act[(g, x)] for g in self.group)

    def stabilizer(self, x):
        return self.group.elements.subset(g for g in self.group if self.act[(g, x)] == x)

    def is_invariant(self, subset):
        return all(self.act[(g, x)] in subset for g in self.group for x in subset)

    def is_trivial(self):
        return all(self.act[(g, x)] == x for g, x in self.act)

    def restrict(self, subset):
        """The action on an invariant subset."""
        if not subset.issubset(self.carrier):
            raise DomainMismatch("restriction to a set outside the carrier")
        if not self.is_invariant(subset):
            raise InvalidStructure("cannot restrict an action to a non-invariant subset")
        sub = self.carrier.subset(subset)
        return GroupAction(self.group, sub,
                           {(g, x): self.act[(g, x)] for g in self.group for x in sub})

    def along(self, hom):
        """The action of ``hom.source`` given by ``h . x = hom(h) . x``."""
        if hom.target != self.group:
            raise DomainMismatch("homomorphism does not land in the acting group")
        return GroupAction(hom.source, self.carrier,
                           {(h, x): self.act[(hom(h), x)]
                            for h in hom.source for x in self.carrier})

    def relabel(self, renaming):
        """The same action transported along a bijection of the carrier."""
        carrier = FinSet(renaming[x] for x in self.carrier)
        return GroupAction(self.group, carrier,
                           {(g, renaming[x]): renaming[y] for (g, x), y in self.act.items()})

    @classmethod
    def trivial(cls, group, carrier):
        return cls(group, carrier, {(g, x): x for g in group for x in carrier})

    @classmethod
    def from_permutations(cls, group, carrier, perms):
        """Action with ``g . x = perms[g][x]``; missing elements act trivially."""
        return cls(group, carrier,
                   {(g, x): perms.get(g, {}).get(x, x) for g in group for x in carrier})

    @classmethod
    def regular(cls, group):
        """Left translation of a group on its own elements."""
        return cls(group, group.elements,
                   {(g, h): group.op(g, h) for g in group for h in group})


class GroupHom:
    """A homomorphism of finite groups, given as a table."""

    def __init__(self, source, target, table):
        table = dict(table)
        for g in source:
            if table.get(g) not in target.elements:
                raise InvalidStructure(f"homomorphism has no image in the target for {g!r}")
        for g, h in itertools.product(source, repeat=2):
            if table[source.op(g, h)] != target.op(table[g], table[h]):
                raise InvalidStructure(f"map does not preserve the product {g}*{h}")
        self.source = source
        self.target = target
        self.table = {g: table[g] for g in source}

    def __call__(self, g):
        return self.table[g]

    def __repr__(self):
        return "GroupHom(" + " ".join(f"{g}:{h}" for g, h in self.table.items()) + ")"

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.table == other.table)

    def __hash__(self):
        return hash(tuple(self.table.items()))

    @classmethod
    def identity(cls, group):
        return cls(group, group, {g: g for g in group})

    @classmethod
    def trivial(cls, source, target):
        return cls(source, target, {g: target.identity for g in source})


def parse_cycles(text, carrier):
    """Permutation of ``carrier`` from cycle notation such as ``(a b)(c d e)``.

    >>> p = parse_cycles('(a b)', FinSet('abc'))
    >>> p['a'], p['c']
    ('b', 'c')
    """
    perm = {x: x for x in carrier}
    text = re.sub(r"\)\s*\(", ")(", text.strip())
    if text in ('', '()'):
        return perm
    if not (text.startswith('(') and text.endswith(')')):
        raise InvalidStructure(f"bad cycle notation {text!r}")
    moved = set()
    for body in text[1:-1].split(')('):
        cycle = body.split()
        for x in cycle:
            if x not in carrier:
                raise InvalidStructure(f"{x!r} in cycle {body!r} is not in the carrier")
            if x in moved:
                raise InvalidStructure(f"{x!r} appears in two cycles")
            moved.add(x)
        for k, x in enumerate(cycle):
            perm[x] = cycle[(k + 1) % len(cycle)]
    return perm


def format_cycles(perm, carrier):
    """Cycle notation of a permutation, cycles started at their first element.

    >>> format_cycles({'a': 'b', 'b': 'a', 'c': 'c'}, FinSet('abc'))
    '(a b)'
    """
    done, cycles = set(), []
    for x in carrier:
        if x in done or perm[x] == x:
            continue
        cycle, y = [], x
        while y not in done:
            done.add(y)
            cycle.append(y)
            y = perm[y]
        cycles.append('(' + ' '.join(cycle) + ')')
    return ''.join(cycles) or '()'
