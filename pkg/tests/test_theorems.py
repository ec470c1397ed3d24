"""
Tests for theorem-level verification on handwritten and generated instances.
"""
import pytest

from ymext.harness.generate import generate_instances
from ymext.harness.instance import parse_instance_text
from ymext.harness.theorems import verify_theorem

from .helpers import TOY_INSTANCE

THEOREM_B = """
[theorem B]
target = {target}
domains = {domains}
sources = chain
"""

THEOREM_C = """
[subset dom_ab]
of = omega
elements = w0, h1, a, b

[theorem C]
context = ctx
functionals = s
domains = {domains}
"""


def _toy(extra=''):
    return parse_instance_text(TOY_INSTANCE + extra)


def test_theorem_a_on_handwritten_classes():
    report = verify_theorem('A', _toy())
    assert report.verdict('A[chain:chain] terminal object') == 'confirmed'
    for mode in ('maximal', 'universal', 'weak-maximal', 'weak-universal', 'universal-iso'):
        assert report.verdict(f"A[chain:chain] {mode}") == 'confirmed'
    assert report.verdict('A[chain:chain] dense maximal') == 'confirmed'
    assert report.verdict('A[antichain:antichain] terminal object') == 'unmet'
    assert report.exit_code == 2
    assert report.counters['hom_sets'] > 0


def test_theorem_b_confirmed():
    report = verify_theorem('B', _toy(THEOREM_B.format(target='chain', domains='dom_a, dom_b')))
    assert report.verdict('B coherence (maximality)') == 'confirmed'
    assert report.verdict('B greatest element') == 'confirmed'
    assert report.checks[1].details['greatest'] == 'e_ab'
    assert report.verdict('B chain maximal') == 'confirmed'
    assert report.exit_code == 0


def test_theorem_b_hypothesis_unmet():
    report = verify_theorem('B', _toy(THEOREM_B.format(target='antichain',
                                                        domains='dom_a, dom_b')))
    assert report.verdict('B coherence (maximality)') == 'unmet'
    assert report.exit_code == 2


def test_theorem_c_finds_incomparable_members():
    report = verify_theorem('C', _toy(THEOREM_C.format(domains='dom_a, dom_b')))
    assert report.verdict('C disjoint domains') == 'confirmed'
    assert report.verdict('C coproducts and totality') == 'counterexample'
    assert report.exit_code == 3
    assert [d['code'] for d in report.deviations] == ['coherent-order-not-total']


def test_theorem_c_needs_disjoint_domains():
    report = verify_theorem('C', _toy(THEOREM_C.format(domains='dom_a, dom_ab')))
    assert report.verdict('C disjoint domains') == 'unmet'
    assert report.exit_code == 2


def test_unknown_theorem():
    with pytest.raises(ValueError):
        verify_theorem('D', _toy())


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_generated_chain(seed):
    inst, = generate_instances(seed, 'chain')
    assert verify_theorem('A', inst).exit_code == 0
    assert verify_theorem('B', inst).exit_code == 0


@pytest.mark.parametrize('seed', [0, 1])
def test_generated_antichain(seed):
    inst, = generate_instances(seed, 'antichain')
    assert verify_theorem('A', inst).exit_code == 0
    report = verify_theorem('C', inst)
    assert report.exit_code == 3
    assert report.verdict('C coproducts and totality') == 'counterexample'


@pytest.mark.parametrize('profile', ['disjoint-core', 'conflicting-orbits'])
def test_generated_disjoint_core(profile):
    inst, = generate_instances(4, profile)
    report = verify_theorem('C', inst)
    assert report.exit_code == 0
    greatest = [c for c in report.checks if c.name == 'C greatest element'][0]
    assert greatest.verdict == 'confirmed'
    assert report.verdict('C Pb order total') == 'confirmed'


def test_reports_are_reproducible():
    inst, = generate_instances(1, 'antichain')
    assert verify_theorem('C', inst).render_text() == verify_theorem('C', inst).render_text()
