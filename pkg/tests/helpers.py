"""
Tiny contexts and extensions shared by the test modules.
"""
from ymext.extensions.extension_class import Extension, ExtensionContext
from ymext.finite_sets.finite_class import FinMap, FinSet, RatFn
from ymext.group_actions.group_class import (FinGroup, GroupAction, GroupHom,
                                             parse_cycles)


def make_context(points=('a',), paired=False, base_values=('1',), order=None, embedding=None,
                 name='toy'):
    """A context over ``w0``, ``conn_hat`` (``h1``, or the pair ``h1 h2``
    swapped by a group of order two) and extra fixed ``points``.

    ``conn`` is ``d0, d1, ...`` with ``base_s`` taking ``0`` and then
    ``base_values``. ``order`` lists omega in a different order and
    ``embedding`` is a table ``conn -> omega``.
    """
    hats = ['h1', 'h2'] if paired else ['h1']
    omega = FinSet(order if order is not None else ['w0'] + hats + list(points))
    conn = FinSet(['d0'] + [f"d{k}" for k in range(1, len(base_values) + 1)])
    generators = [parse_cycles('(h1 h2)', omega)] if paired else []
    group, perms = FinGroup.from_permutations(omega, generators)
    gau_hat = GroupAction.from_permutations(group, omega, perms)
    triv = FinGroup.trivial()
    gau = GroupAction.trivial(triv, conn)
    xi = GroupHom(triv, group, {'e': group.identity})
    base_s = RatFn(conn, dict(zip(conn, ['0'] + list(base_values))))
    if embedding is not None:
        embedding = FinMap(conn, omega, embedding)
    return ExtensionContext(omega, 'w0', gau_hat, omega.subset(hats), conn, 'd0', gau,
                            xi, base_s, embedding=embedding, name=name)


def functional(ctx, **values):
    """Functional on omega, zero wherever no value is given."""
    return RatFn(ctx.omega, {x: values.get(x, 0) for x in ctx.omega})


def extension(ctx, x, s, c1, delta, c_fn=None, label=None):
    """Extension with domain ``x`` (list), functional ``s`` restricted to it."""
    x = ctx.omega.subset(x)
    c1 = ctx.omega.subset(c1)
    c_fn = RatFn.zero(c1) if c_fn is None else RatFn(c1, {c: c_fn.get(c, 0) for c in c1})
    return Extension(x, s.restrict(x), c1, c_fn, FinMap(c1, ctx.conn, delta), label=label)


def core_extension(ctx, s, extra=(), label=None):
    """Complete extension on the core plus ``extra`` with ``h1`` matched to ``d1``."""
    x = list(ctx.core) + list(extra)
    return extension(ctx, x, s, ['w0', 'h1'], {'w0': 'd0', 'h1': 'd1'}, label=label)


MINIMAL_INSTANCE = """\
# one-point sets and trivial groups
[set omega]
elements = w0
basepoint = w0

[set conn]
elements = d0
basepoint = d0

[subset conn_hat]
of = omega
elements =

[permgroup gau_hat]
carrier = omega

[group triv]
elements = e
identity = e
row.e = e

[action gau]
group = triv
carrier = conn

[hom xi]
source = triv
target = gau_hat
table = e:g0

[functional base_s]
on = conn
values = d0:0

[context ctx]
omega = omega
gau_hat = gau_hat
conn_hat = conn_hat
conn = conn
gau = gau
xi = xi
base_s = base_s
"""


TOY_INSTANCE = """\
[config]
cfg = strict

[set omega]
elements = w0, h1, a, b
basepoint = w0

[set conn]
elements = d0, d1
basepoint = d0

[subset conn_hat]
of = omega
elements = h1

[permgroup gau_hat]
carrier = omega

[group triv]
elements = e
identity = e
row.e = e

[action gau]
group = triv
carrier = conn

[hom xi]
source = triv
target = gau_hat
table = e:g0

[functional base_s]
on = conn
values = d0:0, d1:1

[functional s]
on = omega
values = w0:0, h1:1, a:2, b:3

[context ctx]
omega = omega
gau_hat = gau_hat
conn_hat = conn_hat
conn = conn
gau = gau
xi = xi
base_s = base_s

[extension e_core]
context = ctx
x = w0, h1
s_hat = w0:0, h1:1
c1 = w0, h1
c_fn = w0:0, h1:0
delta = w0:d0, h1:d1

[extension e_a]
context = ctx
x = w0, h1, a
s_hat = w0:0, h1:1, a:2
c1 = w0, h1
c_fn = w0:0, h1:0
delta = w0:d0, h1:d1

[extension e_b]
context = ctx
x = w0, h1, b
s_hat = w0:0, h1:1, b:3
c1 = w0, h1
c_fn = w0:0, h1:0
delta = w0:d0, h1:d1

[extension e_ab]
context = ctx
x = w0, h1, a, b
s_hat = w0:0, h1:1, a:2, b:3
c1 = w0, h1
c_fn = w0:0, h1:0
delta = w0:d0, h1:d1

[extension bad]
context = ctx
x = w0, h1, a
s_hat = w0:0, h1:1, a:2
c1 = w0, h1
c_fn = w0:0, h1:1
delta = w0:d0, h1:d1

[subset dom_a]
of = omega
elements = w0, h1, a

[subset dom_b]
of = omega
elements = w0, h1, b

[class chain]
context = ctx
members = e_core, e_a, e_ab

[class antichain]
context = ctx
members = e_a, e_b

[theorem A]
pairs = chain:chain, antichain:antichain
"""
