"""
Unit tests for finite groups, actions, orbits and quotient-injective subsets.
"""
import pytest
from hypothesis import given, strategies as st

from ymext.errors import InvalidStructure, NotInvariant
from ymext.finite_sets.finite_class import FinMap, FinSet, RatFn
from ymext.group_actions.group_class import (FinGroup, GroupAction, GroupHom, format_cycles,
                                             parse_cycles)
from ymext.group_actions.orbits import (invariance_report, is_equivariant,
                                        maximal_injective_subsets, orbits, quotient_map)

OMEGA = FinSet(['w0', 'h1', 'h2', 'a'])


@pytest.fixture(scope='function')
def swap_action():
    """Group of order two swapping h1 and h2."""
    def _make(carrier=OMEGA, cycles='(h1 h2)'):
        group, perms = FinGroup.from_permutations(carrier, [parse_cycles(cycles, carrier)])
        return GroupAction.from_permutations(group, carrier, perms)
    return _make


def test_cyclic_group():
    z3 = FinGroup.cyclic(3)
    assert len(z3) == 3
    assert z3.op('r1', 'r2') == 'r0'
    assert z3.inverse['r1'] == 'r2'


def test_from_rows_rejects_non_group():
    elements = FinSet(['e', 'x'])
    with pytest.raises(InvalidStructure):
        FinGroup.from_rows(elements, {'e': ['e', 'x'], 'x': ['x', 'x']}, 'e')


def test_closure_of_permutations():
    carrier = FinSet(['p', 'q', 'r'])
    group, perms = FinGroup.from_permutations(carrier, [parse_cycles('(p q r)', carrier)])
    assert len(group) == 3
    assert group.identity == 'g0'
    assert perms['g1'] == {'p': 'q', 'q': 'r', 'r': 'p'}
    assert format_cycles(perms['g2'], carrier) == '(p r q)'


def test_action_must_fix_under_identity():
    group = FinGroup.trivial()
    with pytest.raises(InvalidStructure, match='identity moves'):
        GroupAction(group, OMEGA, {('e', x): 'w0' for x in OMEGA})


def test_orbits_and_quotient(swap_action):
    a = swap_action()
    assert [list(o) for o in orbits(a)] == [['w0'], ['h1', 'h2'], ['a']]
    q = quotient_map(a)
    assert q('h2') == 'h1'
    assert list(q.codomain) == ['w0', 'h1', 'a']
    with pytest.raises(NotInvariant):
        orbits(a, OMEGA.subset(['w0', 'h1']))


def test_invariance_report(swap_action):
    a = swap_action()
    s = RatFn(OMEGA, {'w0': 0, 'h1': 1, 'h2': 1, 'a': 2})
    assert invariance_report(a, s, OMEGA) == (True, True, True)
    clash = RatFn(OMEGA, {'w0': 0, 'h1': 1, 'h2': 1, 'a': 1})
    assert invariance_report(a, clash, OMEGA) == (True, True, False)
    broken = RatFn(OMEGA, {'w0': 0, 'h1': 1, 'h2': 2, 'a': 3})
    assert invariance_report(a, broken, OMEGA) == (True, False, False)
    assert invariance_report(a, s, OMEGA.subset(['h1'])) == (False, True, False)


def test_equivariance_along_homomorphism(swap_action):
    a = swap_action()
    triv = FinGroup.trivial()
    hom = GroupHom.trivial(triv, a.group)
    pulled = a.along(hom)
    assert pulled.is_trivial()
    identity = a.permutation(a.group.identity)
    assert is_equivariant(identity, a, a)
    assert not is_equivariant(FinMap.constant(OMEGA, OMEGA, 'h1'), a, a)


def test_maximal_injective_subsets(swap_action):
    a = swap_action(FinSet(['w0', 'h1', 'h2', 'a', 'b']))
    s = RatFn(a.carrier, {'w0': 0, 'h1': 1, 'h2': 1, 'a': 2, 'b': 2})
    result = maximal_injective_subsets(a, s)
    assert result.core_feasible
    assert not result.unique
    assert list(result.canonical) == ['w0', 'h1', 'h2', 'a']
    assert [list(x) for x in result.all_maximal] == [['w0', 'h1', 'h2', 'a'],
                                                     ['w0', 'h1', 'h2', 'b']]


def test_required_core_excludes_colliding_orbits(swap_action):
    a = swap_action(FinSet(['w0', 'b', 'h1', 'h2']))
    s = RatFn(a.carrier, {'w0': 0, 'b': 1, 'h1': 1, 'h2': 1})
    core = a.carrier.subset(['w0', 'h1', 'h2'])
    result = maximal_injective_subsets(a, s, required_core=core)
    assert result.unique
    assert result.canonical == core
    zero = RatFn(a.carrier, {x: 0 for x in a.carrier})
    assert not maximal_injective_subsets(a, zero, required_core=core).core_feasible


@st.composite
def cyclic_actions(draw):
    n = draw(st.integers(1, 6))
    carrier = FinSet(f"x{k}" for k in range(n))
    order = draw(st.permutations(carrier.elements))
    cut = draw(st.integers(0, n))
    cycle = order[:cut]
    text = '(' + ' '.join(cycle) + ')' if len(cycle) > 1 else ''
    group, perms = FinGroup.from_permutations(carrier, [parse_cycles(text, carrier)])
    return GroupAction.from_permutations(group, carrier, perms)


@given(cyclic_actions())
def test_orbits_partition_the_carrier(a):
    blocks = orbits(a)
    assert sorted(x for block in blocks for x in block) == sorted(a.carrier)
    q = quotient_map(a)
    for block in blocks:
        assert {q(x) for x in block} == {block.elements[0]}
        assert a.orbit(block.elements[0]) == block


def test_regular_action_of_s3():
    letters = FinSet(['1', '2', '3'])
    group, _ = FinGroup.from_permutations(
        letters, [parse_cycles('(1 2)', letters), parse_cycles('(1 2 3)', letters)])
    assert len(group) == 6
    a = GroupAction.regular(group)
    blocks = orbits(a)
    assert [len(block) for block in blocks] == [6]
    assert len(quotient_map(a).codomain) == 1
    assert all(len(a.stabilizer(g)) == 1 for g in group)

    constant = RatFn(a.carrier, {g: 1 for g in group})
    assert all(invariance_report(a, constant, a.carrier))
    marked = RatFn(a.carrier, {g: int(g == group.identity) for g in group})
    assert not invariance_report(a, marked, a.carrier).invariant_fn


@st.composite
def z4_actions(draw):
    """Z/4 acting through a permutation with cycles of length 1, 2 and 4."""
    lengths = draw(st.lists(st.sampled_from([1, 2, 4]), min_size=1, max_size=3))
    carrier = FinSet(f"x{k}" for k in range(sum(lengths)))
    points = list(draw(st.permutations(carrier.elements)))
    step, start = {}, 0
    for n in lengths:
        cycle = points[start:start + n]
        step.update(zip(cycle, cycle[1:] + cycle[:1]))
        start += n
    perms, current = {}, {x: x for x in carrier}
    for k in range(4):
        perms[f"r{k}"] = dict(current)
        current = {x: step[y] for x, y in current.items()}
    return GroupAction.from_permutations(FinGroup.cyclic(4), carrier, perms)


@given(z4_actions())
def test_z4_orbits_divide_the_order(a):
    blocks = orbits(a)
    assert sorted(x for block in blocks for x in block) == sorted(a.carrier)
    for block in blocks:
        assert 4 % len(block) == 0
        assert len(a.stabilizer(block.elements[0])) * len(block) == 4
    fixed = sum(1 for g in a.group for x in a.carrier if a(g, x) == x)
    assert fixed == 4 * len(blocks)
