"""
Finite sets, total maps between them and rational-valued functionals.

All three are immutable value objects. Equality is structural: two
`FinSet` objects are equal when they hold the same identifiers, whatever
their order; the order is kept only so that every enumeration built on top
of them is deterministic.
"""
import logging
from fractions import Fraction

from ..basic_utils import format_rational, parse_rational
from ..errors import DomainMismatch, InvalidStructure

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["FinSet", "FinMap", "RatFn", "pair_name", "tag_name"]


def pair_name(a, b):
    """Identifier of the ordered pair (a, b)."""
    return f"({a},{b})"


def tag_name(x, k):
    """Identifier of ``x`` in the ``k``-th summand of a disjoint union."""
    return f"{x}@{k}"


class FinSet:
    """An ordered finite set of opaque string identifiers."""

    __slots__ = ('elements', '_index', '_frozen')

    def __init__(self, elements=()):
        elements = tuple(str(x) for x in elements)
        index = {}
        for pos, x in enumerate(elements):
            if x in index:
                raise InvalidStructure(f"duplicate element {x!r} in finite set")
            index[x] = pos
        self.elements = elements
        self._index = index
        self._frozen = frozenset(elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        if not isinstance(other, FinSet):
            return NotImplemented
        return self._frozen == other._frozen

    def __hash__(self):
        return hash(self._frozen)

    def __repr__(self):
        return "FinSet([" + ", ".join(self.elements) + "])"

    def index(self, x):
        """Position of ``x``; the canonical order used by every search."""
        try:
            return self._index[x]
        except KeyError:
            raise DomainMismatch(f"{x!r} is not an element of {self!r}") from None

    def issubset(self, other):
        return self._frozen <= other._frozen

    def subset(self, items):
        """The sub-FinSet holding ``items``, in this set's order."""
        items = set(items)
        missing = items - self._frozen
        if missing:
            raise DomainMismatch(f"{sorted(missing)} not contained in {self!r}")
        return FinSet(x for x in self.elements if x in items)

    def union(self, other):
        """Union, keeping this set's order first."""
        return FinSet(self.elements + tuple(x for x in other if x not in self))

    def intersection(self, other):
        return FinSet(x for x in self.elements if x in other)

    def difference(self, other):
        return FinSet(x for x in self.elements if x not in other)

    def sorted_like(self, reference):
        """This set reordered along ``reference`` (which must contain it)."""
        return reference.subset(self)


class FinMap:
    """A total function between two finite sets, stored as a table.

    Parameters
    ----------
    domain, codomain : FinSet

    table : dict or sequence of pairs
        Image of every domain element.
    """

    __slots__ = ('domain', 'codomain', 'table', '_key')

    def __init__(self, domain, codomain, table):
        table = dict(table)
        extra = set(table) - set(domain)
        if extra:
            raise InvalidStructure(f"map table has entries outside its domain: {sorted(extra)}")
        for x in domain:
            if x not in table:
                raise InvalidStructure(f"map is not total: no image for {x!r}")
            if table[x] not in codomain:
                raise InvalidStructure(
                    f"image {table[x]!r} of {x!r} is not in the codomain")
        self.domain = domain
        self.codomain = codomain
        self.table = {x: table[x] for x in domain}
        self._key = (domain, codomain, frozenset(self.table.items()))

    def __call__(self, x):
        try:
            return self.table[x]
        except KeyError:
            raise DomainMismatch(f"{x!r} is not in the domain of the map") from None

    def __eq__(self, other):
        if not isinstance(other, FinMap):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        body = " ".join(f"{x}:{y}" for x, y in self.table.items())
        return f"FinMap({body})"

    def items(self):
        return self.table.items()

    def image(self):
        """Image as a subset of the codomain, in codomain order."""
        return self.codomain.subset(self.table.values())

    def fiber(self, y):
        return self.domain.subset(x for x, v in self.table.items() if v == y)

    def restrict(self, subset):
        """Restriction to ``subset`` of the domain."""
        if not subset.issubset(self.domain):
            raise DomainMismatch("restriction to a set outside the domain")
        sub = self.domain.subset(subset)
        return FinMap(sub, self.codomain, {x: self.table[x] for x in sub})

    def corestrict(self, codomain):
        """The same table, regarded as a map into ``codomain``."""
        return FinMap(self.domain, codomain, self.table)

    def is_injective(self):
        return len(set(self.table.values())) == len(self.domain)

    def is_surjective(self):
        return set(self.table.values()) == set(self.codomain)

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def inverse(self):
        if not self.is_bijective():
            raise DomainMismatch("only a bijection has an inverse")
        return FinMap(self.codomain, self.domain, {y: x for x, y in self.table.items()})

    @classmethod
    def identity(cls, s):
        return cls(s, s, {x: x for x in s})

    @classmethod
    def inclusion(cls, subset, superset):
        if not subset.issubset(superset):
            raise DomainMismatch("inclusion of a set that is not a subset")
        return cls(subset, superset, {x: x for x in subset})

    @classmethod
    def constant(cls, domain, codomain, value):
        return cls(domain, codomain, {x: value for x in domain})


class RatFn:
    """A function from a finite set to exact rationals.

    Values are `fractions.Fraction`; ``'p/q'`` strings and integers are
    accepted on construction.
    """

    __slots__ = ('domain', 'table', '_key')

    def __init__(self, domain, table):
        table = dict(table)
        extra = set(table) - set(domain)
        if extra:
            raise InvalidStructure(f"functional has entries outside its domain: {sorted(extra)}")
        values = {}
        for x in domain:
            if x not in table:
                raise InvalidStructure(f"functional is not total: no value at {x!r}")
            try:
                values[x] = parse_rational(table[x])
            except ValueError as err:
                raise InvalidStructure(str(err)) from err
        self.domain = domain
        self.table = values
        self._key = (domain, frozenset(values.items()))

    def __call__(self, x):
        try:
            return self.table[x]
        except KeyError:
            raise DomainMismatch(f"{x!r} is not in the domain of the functional") from None

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        body = " ".join(f"{x}:{format_rational(v)}" for x, v in self.table.items())
        return f"RatFn({body})"

    def items(self):
        return self.table.items()

    def values(self):
        return self.table.values()

    def restrict(self, subset):
        if not subset.issubset(self.domain):
            raise DomainMismatch("restriction to a set outside the domain")
        sub = self.domain.subset(subset)
        return RatFn(sub, {x: self.table[x] for x in sub})

    def after(self, f):
        """The composite ``self o f`` of this functional with a map."""
        if not f.codomain.issubset(self.domain) and not f.image().issubset(self.domain):
            raise DomainMismatch("map does not land in the domain of the functional")
        return RatFn(f.domain, {x: self.table[y] for x, y in f.items()})

    def __sub__(self, other):
        if self.domain != other.domain:
            raise DomainMismatch("difference of functionals on different domains")
        return RatFn(self.domain, {x: v - other(x) for x, v in self.table.items()})

    def is_constant(self):
        return len(set(self.table.values())) <= 1

    def is_zero(self):
        return all(v == 0 for v in self.table.values())

    @classmethod
    def zero(cls, domain):
        return cls(domain, {x: Fraction(0) for x in domain})

    @classmethod
    def constant(cls, domain, value):
        return cls(domain, {x: value for x in domain})
