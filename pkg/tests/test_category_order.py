"""
Unit tests for extension classes as categories: orders, terminal objects,
maximality, density and coherence.
"""
import logging

import numpy as np
import pytest

from ymext.category_order.coherence import class_E_of_I, coherence_check
from ymext.category_order.ext_class import ExtClass
from ymext.category_order.maximality import MODES, check_maximality, density_check
from ymext.category_order.order import (build_preorder, greatest_element, hasse_edges,
                                        initial_objects, is_gaunt, is_reflexive, is_total,
                                        is_transitive, iso_poset, terminal_objects,
                                        unique_morphism_order)
from ymext.errors import InvalidExtension, InvalidStructure, NotGaunt

from .helpers import core_extension, extension, functional, make_context


@pytest.fixture(scope='function')
def setup_class():
    """Classes over a context with two extra fixed points ``a`` and ``b``."""
    def _make(names, a_value=2, b_value=3, cfg=None):
        ctx = make_context(points=('a', 'b'))
        s = functional(ctx, h1=1, a=a_value, b=b_value)
        extras = {'e_core': [], 'e_a': ['a'], 'e_b': ['b'], 'e_ab': ['a', 'b']}
        members = [core_extension(ctx, s, extras[n], label=n) for n in names]
        return ExtClass(ctx, members, cfg=cfg, name='test')
    return _make


def test_class_rejects_bad_members(setup_class):
    cl = setup_class(['e_a'])
    with pytest.raises(InvalidStructure):
        ExtClass(cl.context, [cl[0], cl[0].with_label('again')])
    s = functional(cl.context, h1=1, a=2)
    bad = extension(cl.context, ['w0', 'a'], s, ['w0'], {'w0': 'd0'})
    with pytest.raises(InvalidExtension):
        ExtClass(cl.context, [bad])


def test_chain_order(setup_class):
    cl = setup_class(['e_core', 'e_a', 'e_ab'])
    leq = build_preorder(cl)
    np.testing.assert_array_equal(leq, np.triu(np.ones((3, 3), dtype=bool)))
    assert cl.stats['hom_sets'] == 9
    assert is_reflexive(leq)
    assert is_transitive(leq)
    assert is_total(leq) == (True, None)

    poset = iso_poset(cl)
    assert poset.blocks == [[0], [1], [2]]
    assert poset.antisymmetric
    assert greatest_element(poset) == 2
    assert hasse_edges(poset) == [(0, 1), (1, 2)]

    assert terminal_objects(cl) == [2]
    assert initial_objects(cl) == [0]
    assert is_gaunt(cl)
    np.testing.assert_array_equal(unique_morphism_order(cl), leq)


def test_antichain_order(setup_class):
    cl = setup_class(['e_a', 'e_b'])
    assert is_total(build_preorder(cl)) == (False, (0, 1))
    assert greatest_element(iso_poset(cl)) is None
    assert terminal_objects(cl) == []


def test_isomorphic_members(setup_class):
    cl = setup_class(['e_a', 'e_b'], b_value=2)
    assert cl.iso_classes() == [[0, 1]]
    assert not is_gaunt(cl)
    with pytest.raises(NotGaunt):
        unique_morphism_order(cl)
    assert greatest_element(iso_poset(cl)) == 0


def test_quotient_not_antisymmetric(setup_class, caplog):
    cl = setup_class(['e_a', 'e_ab'], b_value=2, cfg='lax')
    with caplog.at_level(logging.WARNING):
        poset = iso_poset(cl)
    assert not poset.antisymmetric
    assert any(getattr(r, 'deviation', None) == 'quotient-not-antisymmetric'
               for r in caplog.records)


@pytest.mark.parametrize('mode', MODES)
def test_chain_is_maximal_in_every_mode(setup_class, mode):
    cl = setup_class(['e_core', 'e_a', 'e_ab'])
    verdict = check_maximality(cl, cl, mode)
    assert verdict.holds
    assert verdict.hypothesis_met
    if mode in ('maximal', 'universal', 'universal-iso'):
        assert verdict.witness == {'e_core': 'e_ab', 'e_a': 'e_ab', 'e_ab': 'e_ab'}


@pytest.mark.parametrize('mode', ['maximal', 'universal', 'weak-maximal', 'weak-universal'])
def test_antichain_is_not_maximal(setup_class, mode):
    cl = setup_class(['e_a', 'e_b'])
    verdict = check_maximality(cl, cl, mode)
    assert not verdict.holds
    assert verdict.counterexample is not None


def test_universal_iso_needs_gaunt(setup_class):
    cl = setup_class(['e_a', 'e_b'], b_value=2)
    verdict = check_maximality(cl, cl, 'universal-iso')
    assert not verdict.hypothesis_met
    assert 'not gaunt' in verdict.reason


def test_empty_source_is_vacuous(setup_class):
    cl = setup_class(['e_a', 'e_b'])
    empty = cl.subclass([])
    assert check_maximality(empty, cl, 'maximal').holds


def test_density(setup_class):
    cl = setup_class(['e_a', 'e_b'])
    core = setup_class(['e_core'])[0]
    top = setup_class(['e_ab'])[0]
    failing = density_check(cl, core)
    assert not failing.holds
    assert failing.subsets_checked == 4
    assert failing.failing_subset == ['e_a', 'e_b']

    dense = density_check(cl, top, 'universal')
    assert dense.holds
    assert dense.subsets_checked == 4


def test_coherence_of_chain(setup_class):
    cl = setup_class(['e_core', 'e_a', 'e_ab'])
    omega = cl.context.omega
    domains = [omega.subset(['w0', 'h1', 'a']), omega.subset(['w0', 'h1', 'b'])]
    for mode in ('maximality', 'universality'):
        verdict = coherence_check(cl, domains, mode)
        assert verdict.holds
        assert verdict.initial_objects == ['e_core']


def test_coherence_failures(setup_class):
    omega = setup_class(['e_a']).context.omega
    domains = [omega.subset(['w0', 'h1', 'a']), omega.subset(['w0', 'h1', 'b'])]

    missing = coherence_check(setup_class(['e_core', 'e_a', 'e_b']), domains)
    assert not missing.holds
    assert not missing.coproducts_ok
    assert missing.cause == 'coproduct is not in the class'
    assert missing.witness == ['e_a', 'e_b']

    untotal = coherence_check(setup_class(['e_core', 'e_a', 'e_b', 'e_ab']), domains)
    assert not untotal.holds
    assert untotal.coproducts_ok
    assert untotal.witness == ['e_a', 'e_b']


def test_generated_class_readings(setup_class):
    cl = setup_class(['e_core', 'e_a', 'e_b'])
    assert len(class_E_of_I(cl, 0)) == 0
    assert class_E_of_I(cl, 2).members == cl.members
    glued = class_E_of_I(cl, 2, 'coproduct')
    assert glued.labels == ['null', 'e_core', 'e_a', 'e_b', 'e_a+e_b']
    with pytest.raises(ValueError):
        class_E_of_I(cl, 1, 'other')
