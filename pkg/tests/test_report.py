"""
Unit tests for verdict aggregation, rendering and deviation capture.
"""
import json
import logging
from fractions import Fraction

import pytest

from ymext.harness.report import EXIT_CODES, Report, collect_deviations, plain


def _params():
    """Verdict sequences and the status they aggregate to."""
    return [
        ([], 'confirmed'),
        (['confirmed', 'info', 'skipped'], 'confirmed'),
        (['confirmed', 'unmet'], 'unmet'),
        (['unmet', 'counterexample', 'confirmed'], 'counterexample'),
        (['counterexample', 'budget'], 'budget'),
        (['budget', 'invalid', 'unmet'], 'invalid'),
    ]


@pytest.mark.parametrize('verdicts, status', _params())
def test_status_precedence(verdicts, status):
    report = Report(['check'])
    for k, verdict in enumerate(verdicts):
        report.add(f"check {k}", verdict)
    assert report.status == status
    assert report.exit_code == EXIT_CODES[status]


def test_unknown_verdict():
    with pytest.raises(ValueError):
        Report(['check']).add('x', 'maybe')


def test_renderings():
    report = Report(['ymext', 'homset'], digest='ab' * 32)
    report.add('hom set', 'info', count=2, value=Fraction(1, 3), names=['a', 'b'])
    report.add('terminal object', 'unmet', reason='none')
    report.count('hom_sets', 3)
    report.count('hom_sets', 2)

    text = report.render('text')
    assert text.startswith('command: ymext homset\n')
    assert f"instance: sha256:{'ab' * 32}" in text
    assert text.endswith('status: unmet (exit 2)\n')

    data = json.loads(report.render('structured'))
    assert data['exit_code'] == 2
    assert data['counters'] == {'hom_sets': 5}
    assert data['checks'][0]['details'] == {'count': 2, 'value': '1/3', 'names': ['a', 'b']}
    assert report.render('structured') == report.render('structured')


def test_plain_values():
    assert plain((1, Fraction(2))) == [1, '2']
    assert plain({3: None}) == {'3': None}


def test_deviations_are_collected_once():
    logger = logging.getLogger('ymext.deviation_test')
    with collect_deviations() as collector:
        for _ in range(2):
            logger.warning('odd case', extra={'deviation': 'odd-case'})
        logger.warning('ordinary warning')
    assert collector.records == [{'code': 'odd-case', 'message': 'odd case',
                                  'source': 'ymext.deviation_test'}]
    report = Report(['x'])
    report.extend_deviations(collector.records)
    report.extend_deviations(collector.records)
    assert len(report.deviations) == 1
