"""
Unit tests for finite sets, maps, functionals and their universal constructions.
"""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ymext.errors import DomainMismatch, InvalidStructure, NotSurjective
from ymext.finite_sets.finite_class import FinMap, FinSet, RatFn
from ymext.finite_sets.universal import (all_maps, compose, disjoint_union,
                                         enumerate_sections, map_properties, set_pullback,
                                         verify_universal)

A = FinSet(['a1', 'a2'])
B = FinSet(['b1', 'b2'])
C = FinSet(['c1', 'c2'])


def test_finset_identity_and_order():
    s = FinSet(['x', 'y', 'z'])
    assert s == FinSet(['z', 'x', 'y'])
    assert s.subset(['z', 'x']).elements == ('x', 'z')
    assert s.union(FinSet(['w', 'x'])).elements == ('x', 'y', 'z', 'w')
    with pytest.raises(InvalidStructure):
        FinSet(['x', 'x'])
    with pytest.raises(DomainMismatch):
        s.subset(['q'])


def test_finmap_validation():
    with pytest.raises(InvalidStructure, match='not total'):
        FinMap(A, B, {'a1': 'b1'})
    with pytest.raises(InvalidStructure, match='codomain'):
        FinMap(A, B, {'a1': 'b1', 'a2': 'c1'})
    f = FinMap(A, B, {'a1': 'b2', 'a2': 'b1'})
    assert f.is_bijective()
    assert compose(f, f.inverse()) == FinMap.identity(A)
    assert map_properties(FinMap.constant(A, B, 'b1')) == (False, False)


def test_ratfn_parsing():
    s = RatFn(A, {'a1': '1/2', 'a2': 3})
    assert s('a1') == Fraction(1, 2)
    assert (s - s).is_zero()
    f = FinMap(B, A, {'b1': 'a2', 'b2': 'a2'})
    assert s.after(f) == RatFn.constant(B, 3)
    with pytest.raises(InvalidStructure):
        RatFn(A, {'a1': 'half', 'a2': 0})


def test_all_maps_count():
    maps = list(all_maps(A, FinSet(['p', 'q', 'r'])))
    assert len(maps) == 9
    assert len(set(maps)) == 9
    assert maps[0] == FinMap.constant(A, FinSet(['p', 'q', 'r']), 'p')


def test_enumerate_sections():
    src = FinSet(['x1', 'x2', 'x3', 'y1'])
    tgt = FinSet(['x', 'y'])
    p = FinMap(src, tgt, {'x1': 'x', 'x2': 'x', 'x3': 'x', 'y1': 'y'})
    sections = enumerate_sections(p)
    assert len(sections) == 3
    for s in sections:
        assert compose(s, p) == FinMap.identity(tgt)


def test_sections_need_surjection():
    p = FinMap(A, B, {'a1': 'b1', 'a2': 'b1'})
    with pytest.raises(NotSurjective):
        enumerate_sections(p)


def _cospan():
    f = FinMap(A, C, {'a1': 'c1', 'a2': 'c2'})
    g = FinMap(B, C, {'b1': 'c1', 'b2': 'c1'})
    return f, g


def test_pullback_is_filtered_product():
    f, g = _cospan()
    pb, pi1, pi2 = set_pullback(f, g)
    expected = [(a, b) for a in A for b in B if f(a) == g(b)]
    assert [(pi1(p), pi2(p)) for p in pb] == expected
    assert pb.elements == ('(a1,b1)', '(a1,b2)')

    verdict = verify_universal('pullback', {'object': pb, 'legs': (pi1, pi2),
                                            'diagram': (f, g)})
    assert verdict.holds
    assert verdict.cones_checked > 0


def test_planted_non_pullback_fails():
    f, g = _cospan()
    pb, pi1, pi2 = set_pullback(f, g)
    short = pb.subset(['(a1,b1)'])
    verdict = verify_universal('pullback', {'object': short,
                                            'legs': (pi1.restrict(short), pi2.restrict(short)),
                                            'diagram': (f, g)})
    assert not verdict.holds
    assert '0 mediating' in verdict.failure


def test_unfiltered_product_is_not_a_pullback():
    f = FinMap(A, C, {'a1': 'c1', 'a2': 'c2'})
    g = FinMap(FinSet(['b1']), C, {'b1': 'c1'})
    product = FinSet(['(a1,b1)', '(a2,b1)'])
    pi1 = FinMap(product, A, {'(a1,b1)': 'a1', '(a2,b1)': 'a2'})
    pi2 = FinMap.constant(product, g.domain, 'b1')
    verdict = verify_universal('pullback', {'object': product, 'legs': (pi1, pi2),
                                            'diagram': (f, g)})
    assert not verdict.holds
    assert verdict.cones_checked == 0
    assert "'(a2,b1)'" in verdict.failure


def test_disjoint_union_universal():
    pieces = [A, FinSet(['z'])]
    union, injections = disjoint_union(pieces)
    assert union.elements == ('a1@0', 'a2@0', 'z@1')
    assert verify_universal('coproduct', {'object': union, 'legs': injections,
                                          'diagram': pieces}).holds

    padded = FinSet(list(union) + ['extra'])
    legs = [i.corestrict(padded) for i in injections]
    assert not verify_universal('coproduct', {'object': padded, 'legs': legs,
                                              'diagram': pieces}).holds


def test_terminal_set():
    assert verify_universal('terminal', {'object': FinSet(['*'])}).holds
    verdict = verify_universal('terminal', {'object': B})
    assert not verdict.holds
    assert verdict.cones_checked == 2


@st.composite
def composable_maps(draw):
    sizes = draw(st.lists(st.integers(1, 3), min_size=4, max_size=4))
    sets = [FinSet(f"p{k}_{j}" for j in range(n)) for k, n in enumerate(sizes)]
    maps = []
    for src, tgt in zip(sets, sets[1:]):
        values = draw(st.lists(st.sampled_from(tgt.elements), min_size=len(src),
                               max_size=len(src)))
        maps.append(FinMap(src, tgt, zip(src.elements, values)))
    return maps


@given(composable_maps())
def test_composition_is_associative(maps):
    f, g, h = maps
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    assert compose(FinMap.identity(f.domain), f) == f


@given(composable_maps())
def test_image_sections_split_the_corestriction(maps):
    f = maps[0]
    p = f.corestrict(f.image())
    for s in enumerate_sections(p):
        assert compose(s, p) == FinMap.identity(f.image())
