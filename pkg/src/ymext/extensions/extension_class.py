"""
Contexts, extensions and morphisms of extensions.
"""
import logging

from ..errors import InvalidStructure
from ..finite_sets.finite_class import FinMap
from ..finite_sets.universal import compose

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["ExtensionContext", "Extension", "ExtMorphism"]


class ExtensionContext:
    """The fixed data every extension of a class is built over.

    Parameters
    ----------
    omega : FinSet
        The ambient set, with basepoint ``omega0``.

    omega0 : str

    gau_hat : GroupAction
        Gauge action on ``omega``.

    conn_hat : FinSet
        Invariant subset of ``omega``, the gauge-fixing domain.

    conn : FinSet
        The base set, with basepoint ``d0``.

    d0 : str

    gau : GroupAction
        Action on ``conn``.

    xi : GroupHom
        From the group of ``gau`` to the group of ``gau_hat``.

    base_s : RatFn
        Functional on ``conn``, vanishing at ``d0``.

    embedding : FinMap, optional
        ``conn -> omega``, needed only to recognise identity-type extensions.

    name : str, optional
        Label used in reports; not part of the structure.
    """

    def __init__(self, omega, omega0, gau_hat, conn_hat, conn, d0, gau, xi,
                 base_s, embedding=None, name=None):
        if omega0 not in omega:
            raise InvalidStructure("basepoint omega0 is not in omega")
        if d0 not in conn:
            raise InvalidStructure("basepoint d0 is not in conn")
        if gau_hat.carrier != omega:
            raise InvalidStructure("gau_hat does not act on omega")
        if any(gau_hat(h, omega0) != omega0 for h in gau_hat.group):
            raise InvalidStructure("gau_hat moves the basepoint omega0")
        if not conn_hat.issubset(omega):
            raise InvalidStructure("conn_hat is not a subset of omega")
        if not gau_hat.is_invariant(conn_hat):
            raise InvalidStructure("conn_hat is not invariant under gau_hat")
        if gau.carrier != conn:
            raise InvalidStructure("gau does not act on conn")
        if xi.source != gau.group or xi.target != gau_hat.group:
            raise InvalidStructure("xi does not map the group of gau to the group of gau_hat")
        if base_s.domain != conn:
            raise InvalidStructure("base_s is not defined on conn")
        if base_s(d0) != 0:
            raise InvalidStructure("base_s does not vanish at d0")
        if embedding is not None and (embedding.domain != conn
                                      or not embedding.codomain.issubset(omega)):
            raise InvalidStructure("embedding does not map conn into omega")
        self.omega = omega
        self.omega0 = omega0
        self.gau_hat = gau_hat
        self.conn_hat = omega.subset(conn_hat)
        self.conn = conn
        self.d0 = d0
        self.gau = gau
        self.xi = xi
        self.base_s = base_s
        self.embedding = embedding
        self.name = name
        self._xi_action = None

    def __repr__(self):
        return (f"ExtensionContext({self.name or ''} |omega|={len(self.omega)}, "
                f"|conn_hat|={len(self.conn_hat)}, |conn|={len(self.conn)})")

    @property
    def core(self):
        """``conn_hat`` together with ``omega0``, in omega order."""
        return self.omega.subset(set(self.conn_hat) | {self.omega0})

    @property
    def xi_action(self):
        """Action of the group of ``gau`` on ``omega`` through ``xi``."""
        if self._xi_action is None:
            self._xi_action = self.gau_hat.along(self.xi)
        return self._xi_action


class Extension:
    """An extension ``(x, s_hat, c1, c_fn, delta)`` of the base data.

    Construction only checks that the components fit together as maps;
    the invariants relative to a context are checked by
    `~ymext.extensions.extension_ops.validate_extension`.

    Parameters
    ----------
    x : FinSet
        Extended domain, between ``conn_hat + omega0`` and ``omega``.

    s_hat : RatFn
        Extended functional on ``x``.

    c1 : FinSet
        Correction subspace, containing ``omega0``.

    c_fn : RatFn
        Correction term on ``c1``.

    delta : FinMap
        ``c1 -> conn``.

    label : str, optional
        Name used in reports; not part of the structure.
    """

    __slots__ = ('x', 's_hat', 'c1', 'c_fn', 'delta', 'label', '_key')

    def __init__(self, x, s_hat, c1, c_fn, delta, label=None):
        if s_hat.domain != x:
            raise InvalidStructure("s_hat is not defined on x")
        if c_fn.domain != c1:
            raise InvalidStructure("c_fn is not defined on c1")
        if delta.domain != c1:
            raise InvalidStructure("delta is not defined on c1")
        self.x = x
        self.s_hat = s_hat
        self.c1 = c1
        self.c_fn = c_fn
        self.delta = delta
        self.label = label
        self._key = (x, s_hat, c1, c_fn, delta)

    def __eq__(self, other):
        if not isinstance(other, Extension):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        name = f"{self.label}: " if self.label else ""
        return f"Extension({name}x={list(self.x)}, c1={list(self.c1)})"

    @property
    def name(self):
        return self.label or repr(self)

    def with_label(self, label):
        return Extension(self.x, self.s_hat, self.c1, self.c_fn, self.delta, label=label)

    def decomposition_defect(self, base_s):
        """Points of ``c1`` where ``s_hat = base_s o delta + c_fn`` fails."""
        defects = []
        for c in self.c1:
            if c not in self.x:
                continue
            if self.s_hat(c) != base_s(self.delta(c)) + self.c_fn(c):
                defects.append(c)
        return defects


class ExtMorphism:
    """A morphism of extensions: ``f: x1 -> x2`` and ``g: c1_1 -> c1_2``."""

    __slots__ = ('f', 'g', '_key')

    def __init__(self, f, g):
        self.f = f
        self.g = g
        self._key = (f, g)

    def __eq__(self, other):
        if not isinstance(other, ExtMorphism):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"ExtMorphism(f={self.f!r}, g={self.g!r})"

    def then(self, other):
        """The composite ``other o self``."""
        return ExtMorphism(compose(self.f, other.f), compose(self.g, other.g))

    def is_bijective(self):
        return self.f.is_bijective() and self.g.is_bijective()

    def is_identity(self):
        return (self.f == FinMap.identity(self.f.domain)
                and self.g == FinMap.identity(self.g.domain))

    @classmethod
    def identity(cls, e):
        return cls(FinMap.identity(e.x), FinMap.identity(e.c1))
