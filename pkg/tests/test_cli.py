"""
Tests for the command line: reports, exit status and output files.
"""
import json

import pytest

from ymext.extensions.morphisms import hom_set
from ymext.harness.cli import main, run_command
from ymext.harness.instance import parse_instance

from .helpers import TOY_INSTANCE


@pytest.fixture(scope='function')
def toy_file(tmp_path):
    path = tmp_path / 'toy.inst'
    path.write_text(TOY_INSTANCE, encoding='utf-8')
    return str(path)


def test_validate_reports_invalid_extension(toy_file):
    report = run_command(['validate', toy_file])
    assert report.verdict('validate e_a') == 'confirmed'
    assert report.verdict('validate bad') == 'invalid'
    bad = [c for c in report.checks if c.name == 'validate bad'][0]
    assert bad.details['first'] == 'decomposition'
    assert report.exit_code == 5


def test_validate_selected(toy_file):
    assert run_command(['validate', toy_file, 'e_core', 'e_ab']).exit_code == 0


@pytest.mark.parametrize('cfg', [None, 'lax', 'none'])
def test_homset_count_matches_library(toy_file, cfg):
    argv = ['homset', toy_file, 'e_a', 'e_ab'] + ([] if cfg is None else ['--cfg', cfg])
    check, = run_command(argv).checks
    inst = parse_instance(toy_file)
    ctx = inst.context('ctx')
    expected = hom_set(ctx, inst.extension('e_a'), inst.extension('e_ab'),
                       cfg or 'strict')
    assert check.verdict == 'info'
    assert check.details['count'] == len(expected)


def test_poset_of_chain(toy_file):
    check, = run_command(['poset', toy_file, 'chain']).checks
    assert check.details['greatest'] == 'e_ab'
    assert check.details['hasse'] == ['e_core < e_a', 'e_a < e_ab']


def test_usage_errors_are_invalid(toy_file, capsys):
    assert run_command(['homset', toy_file]).exit_code == 5
    assert run_command(['frobnicate']).exit_code == 5
    assert main(['verify-theorem', 'Z', toy_file]) == 5
    assert 'status: invalid (exit 5)' in capsys.readouterr().out


def test_missing_file_is_invalid(tmp_path):
    report = run_command(['validate', str(tmp_path / 'absent.inst')])
    assert report.exit_code == 5


def test_verify_theorem_exit_status(toy_file, capsys):
    assert main(['verify-theorem', 'A', toy_file]) == 2
    assert 'A[antichain:antichain] terminal object' in capsys.readouterr().out


def test_out_file_is_byte_stable(toy_file, tmp_path):
    outputs = []
    for k in range(2):
        out = tmp_path / f"report{k}.json"
        argv = ['poset', toy_file, 'chain', '--format', 'structured', '--out', str(out)]
        assert main(argv) == 0
        outputs.append(json.loads(out.read_text(encoding='utf-8')))
    for entry in outputs:
        entry['command'] = [a for a in entry['command'] if not a.endswith('.json')]
    assert outputs[0] == outputs[1]
    assert outputs[0]['digest'] == parse_instance(toy_file).digest()


def test_generate_writes_instances(tmp_path):
    dest = tmp_path / 'gen'
    report = run_command(['generate', 'chain', '--seed', '3', '--count', '2',
                          '--dest', str(dest)])
    assert report.exit_code == 0
    files = sorted(p.name for p in dest.iterdir())
    assert files == ['chain-3-0.inst', 'chain-3-1.inst']
    assert run_command(['verify-theorem', 'B', str(dest / files[0])]).exit_code == 0


def test_generate_symmetric_shape(tmp_path):
    dest = tmp_path / 'sym'
    report = run_command(['generate', 'symmetric', '--shape', 'Z2xZ3', '--dest', str(dest)])
    assert report.exit_code == 0
    inst = parse_instance(dest / 'symmetric-0-0.inst')
    assert len(inst.context('ctx').gau_hat.group) == 6
    assert run_command(['generate', 'chain', '--shape', 'Z3']).exit_code == 5


def test_coproduct_correction_overlap(toy_file):
    report = run_command(['coproduct', toy_file, 'e_a', 'e_b'])
    assert report.exit_code == 0
    strict = run_command(['coproduct', toy_file, 'e_a', 'e_b', '--disjoint-corrections'])
    assert strict.exit_code == 5
    check, = strict.checks
    assert check.details['error'] == 'OverlapViolation'
