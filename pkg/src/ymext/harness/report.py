"""
Reports emitted by the command line: per-check verdicts, witnesses,
deviations and work counters.

A report holds nothing that varies between runs on the same instance,
command, seed and budget, so both renderings are byte stable.
"""
import hashlib
import json
import logging
from collections import namedtuple
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from ..basic_utils import format_rational
from ..finite_sets.finite_class import FinMap, FinSet, RatFn

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["Check", "Report", "DeviationCollector", "collect_deviations", "VERDICTS",
           "EXIT_CODES", "digest_text", "plain"]

Check = namedtuple('Check', ['name', 'verdict', 'details'])

# Exit status of each verdict, and the order in which verdicts win.
EXIT_CODES = {
    'confirmed': 0,
    'info': 0,
    'skipped': 0,
    'unmet': 2,
    'counterexample': 3,
    'budget': 4,
    'invalid': 5,
}
VERDICTS = tuple(EXIT_CODES)
_PRECEDENCE = ('invalid', 'budget', 'counterexample', 'unmet')


def digest_text(text):
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def plain(value):
    """Convert engine values into JSON-compatible data.

    >>> plain({'s': Fraction(1, 2), 'ok': np.bool_(True)})
    {'s': '1/2', 'ok': True}
    """
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    if value is None or isinstance(value, (str, int, float)):
        return value
    if isinstance(value, FinSet):
        return list(value)
    if isinstance(value, (FinMap, RatFn)):
        return {str(k): plain(v) for k, v in value.items()}
    if hasattr(value, '_asdict'):
        return {k: plain(v) for k, v in value._asdict().items()}
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if hasattr(value, 'name'):
        return value.name
    return repr(value)


class DeviationCollector(logging.Handler):
    """Gather log records that carry a ``deviation`` code."""

    def __init__(self):
        super().__init__(level=logging.DEBUG)
        self.records = []

    def emit(self, record):
        code = getattr(record, 'deviation', None)
        if code is None:
            return
        entry = {'code': code, 'message': record.getMessage(), 'source': record.name}
        if entry not in self.records:
            self.records.append(entry)


@contextmanager
def collect_deviations(logger_name='ymext'):
    collector = DeviationCollector()
    logger = logging.getLogger(logger_name)
    logger.addHandler(collector)
    try:
        yield collector
    finally:
        logger.removeHandler(collector)


class Report:
    """Outcome of one command.

    Parameters
    ----------
    command : list of str
        The command line, echoed in the report.

    digest : str, optional
        SHA-256 of the canonical text of the instance.
    """

    def __init__(self, command, digest=None):
        self.command = list(command)
        self.digest = digest
        self.checks = []
        self.deviations = []
        self.counters = {}

    def __repr__(self):
        return f"Report({' '.join(self.command)}: {self.status})"

    def add(self, name, verdict, **details):
        if verdict not in EXIT_CODES:
            raise ValueError(f"unknown verdict {verdict!r}")
        check = Check(name, verdict, plain(details))
        self.checks.append(check)
        log.debug('%s: %s', name, verdict)
        return check

    def count(self, name, amount):
        self.counters[name] = self.counters.get(name, 0) + int(amount)

    def extend_deviations(self, records):
        for entry in records:
            if entry not in self.deviations:
                self.deviations.append(entry)

    def verdict(self, name):
        """Verdict of the first check called ``name``, or None."""
        for check in self.checks:
            if check.name == name:
                return check.verdict
        return None

    @property
    def status(self):
        verdicts = {c.verdict for c in self.checks}
        for verdict in _PRECEDENCE:
            if verdict in verdicts:
                return verdict
        return 'confirmed'

    @property
    def exit_code(self):
        return EXIT_CODES[self.status]

    def as_dict(self):
        return {
            'command': self.command,
            'digest': self.digest,
            'status': self.status,
            'exit_code': self.exit_code,
            'checks': [{'name': c.name, 'verdict': c.verdict, 'details': c.details}
                       for c in self.checks],
            'deviations': self.deviations,
            'counters': dict(sorted(self.counters.items())),
        }

    def render_structured(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + '\n'

    def render_text(self):
        lines = [f"command: {' '.join(self.command)}"]
        if self.digest:
            lines.append(f"instance: sha256:{self.digest}")
        for c in self.checks:
            lines.append(f"[{c.verdict}] {c.name}")
            for key, value in sorted(c.details.items()):
                lines.extend(_text_lines(key, value, '    '))
        if self.deviations:
            lines.append('deviations:')
            lines.extend(f"    {d['code']}: {d['message']}" for d in self.deviations)
        if self.counters:
            lines.append('counters:')
            lines.extend(f"    {k} = {v}" for k, v in sorted(self.counters.items()))
        lines.append(f"status: {self.status} (exit {self.exit_code})")
        return '\n'.join(lines) + '\n'

    def render(self, fmt='text'):
        if fmt == 'structured':
            return self.render_structured()
        return self.render_text()


def _text_lines(key, value, indent):
    if isinstance(value, list) and value and all(isinstance(v, str) for v in value):
        if len(value) > 1 and any(' ' in v for v in value):
            return [f"{indent}{key}:"] + [f"{indent}    {v}" for v in value]
    if isinstance(value, (dict, list)):
        return [f"{indent}{key} = {json.dumps(value, sort_keys=True)}"]
    return [f"{indent}{key} = {value}"]
