"""
Sweeps of the finite-set, gauge and order constructions over generated
instances of every profile.
"""
import pytest

from ymext.basic_utils import format_rational
from ymext.category_order.ext_class import ExtClass
from ymext.category_order.maximality import density_check
from ymext.constructions.classes import admissible_domains, is_coherent
from ymext.constructions.gauge import (gauge_fixings, pullback_type_extension,
                                       sigma_independence)
from ymext.constructions.lemmas import retraction_report
from ymext.extensions.extension_ops import validate_extension
from ymext.finite_sets.finite_class import FinMap, FinSet, pair_name
from ymext.finite_sets.universal import disjoint_union, set_pullback, verify_universal
from ymext.group_actions.orbits import invariance_report, orbits
from ymext.harness.generate import PROFILES, SYMMETRIES, generate_instances

from .helpers import core_extension, functional, make_context

SEEDS = range(10)


def _sweep():
    return [(profile, seed) for profile in PROFILES for seed in SEEDS]


def _functionals(inst):
    names = ['s', 's2'] if 's2' in inst.declarations else ['s']
    return [inst.functional(name) for name in names]


def _value_cospan(ctx, s):
    """``conn -base_s-> V <-s- omega`` over the printed values."""
    values = FinSet(sorted({format_rational(v) for v in ctx.base_s.values()}
                           | {format_rational(v) for v in s.values()}))
    f = FinMap(ctx.conn, values, {d: format_rational(v) for d, v in ctx.base_s.items()})
    g = FinMap(ctx.omega, values, {x: format_rational(v) for x, v in s.items()})
    return f, g


@pytest.mark.parametrize('profile, seed', _sweep())
def test_generated_universal_properties(profile, seed):
    inst, = generate_instances(seed, profile)
    ctx = inst.context('ctx')
    for s in _functionals(inst):
        f, g = _value_cospan(ctx, s)
        pb, pi1, pi2 = set_pullback(f, g)
        assert verify_universal('pullback', {'object': pb, 'legs': (pi1, pi2),
                                             'diagram': (f, g)}).holds

        pairs = [(d, x) for d in ctx.conn for x in ctx.omega]
        product = FinSet(pair_name(d, x) for d, x in pairs)
        legs = (FinMap(product, ctx.conn, {pair_name(d, x): d for d, x in pairs}),
                FinMap(product, ctx.omega, {pair_name(d, x): x for d, x in pairs}))
        assert not verify_universal('pullback', {'object': product, 'legs': legs,
                                                 'diagram': (f, g)}).holds

    blocks = orbits(ctx.gau_hat)
    union, injections = disjoint_union(blocks)
    assert len(union) == len(ctx.omega)
    assert verify_universal('coproduct', {'object': union, 'legs': injections,
                                          'diagram': blocks}, max_test_size=2).holds


@pytest.mark.parametrize('profile, seed', _sweep())
def test_generated_pullback_decomposition(profile, seed):
    inst, = generate_instances(seed, profile)
    ctx = inst.context('ctx')
    built = 0
    for s in _functionals(inst):
        for x0 in admissible_domains(ctx):
            if not all(invariance_report(ctx.gau_hat, s, x0)):
                continue
            for sigma in gauge_fixings(ctx):
                e, witness = pullback_type_extension(ctx, x0, s, sigma)
                built += 1
                assert validate_extension(ctx, e).valid
                assert is_coherent(ctx, e)
                assert e.c_fn.is_zero()
                assert all(e.s_hat(c) == ctx.base_s(e.delta(c)) for c in e.c1)

                reps = witness.projection.codomain
                matching = [(d, r) for d in ctx.conn for r in reps if ctx.base_s(d) == s(r)]
                assert len(witness.pb) == len(matching)
                assert set(e.c1) == set(witness.image) | {ctx.omega0}
                assert witness.image.issubset(ctx.conn_hat)
    assert built >= 2


@pytest.mark.parametrize('seed', range(4))
def test_six_gauge_fixings_agree(seed):
    inst, = generate_instances(seed, 'symmetric', shape='Z2xZ3')
    ctx = inst.context('ctx')
    assert len(gauge_fixings(ctx)) == 6
    compared = 0
    for s in _functionals(inst):
        for x0 in admissible_domains(ctx):
            if not all(invariance_report(ctx.gau_hat, s, x0)):
                continue
            report = sigma_independence(ctx, x0, s)
            compared += 1
            assert report.holds
            assert len(report.pairs) == 15
            assert report.cardinalities == [2] * 6
    assert compared == 4


# Gauge groups whose fixings of one domain are related by an equivariant bijection.
ABELIAN = ('Z2xZ2', 'Z2xZ3', 'Z3', 'Z4')


@pytest.mark.parametrize('shape', sorted(SYMMETRIES))
def test_retraction_over_symmetric_members(shape):
    inst, = generate_instances(3, 'symmetric', shape=shape)
    ctx = inst.context('ctx')
    members = list(inst.ext_class('Pb'))
    fixings = gauge_fixings(ctx)
    assert len(members) * (len(members) - 1) // 2 >= 20
    for sigma in fixings:
        report = retraction_report(ctx, members, sigma, cfg='strict')
        assert report.well_defined
        assert all(is_coherent(ctx, r) for r in report.retracts)
        # One member per domain and functional was built with sigma itself.
        assert sum(report.fixed) == len(members) // len(fixings)
        assert len(report.classes_after) == len(members) // len(fixings)
        # Otherwise a fixing moved by no commuting symmetry gives a non-isomorphic
        # member with the same retract.
        assert report.injective == (shape in ABELIAN)


@pytest.fixture(scope='function')
def nested_class():
    """The core and its one-point extensions, plus the extension by all of them."""
    def _make(size):
        points = tuple(f"a{k}" for k in range(1, 6))
        ctx = make_context(points=points)
        s = functional(ctx, h1=1, **{x: k + 2 for k, x in enumerate(points)})
        members = [core_extension(ctx, s, label='e_core')]
        members += [core_extension(ctx, s, [x], label=f"e_{x}") for x in points[:size - 1]]
        top = core_extension(ctx, s, points, label='e_top')
        return ExtClass(ctx, members, cfg='strict', name='nested'), top
    return _make


@pytest.mark.parametrize('size', range(1, 7))
def test_density_up_to_six_members(nested_class, size):
    cl, top = nested_class(size)
    for mode in ('maximal', 'universal'):
        dense = density_check(cl, top, mode)
        assert dense.holds
        assert dense.subsets_checked == 2 ** size

    core = cl[0]
    verdict = density_check(cl, core)
    if size < 3:
        assert verdict.holds
    else:
        assert not verdict.holds
        assert verdict.subsets_checked == 7
        assert verdict.failing_subset == ['e_a1', 'e_a2']
