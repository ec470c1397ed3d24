"""
Implementation
--------------

The constraints a morphism of extensions must satisfy are implemented as
"bit flags": each constraint is assigned a bit position in a Python `int`.
If that bit is set, the constraint is enforced by the morphism predicates
and by the hom-set search.

================  =====  ==================================================
Mnemonic          Value  Constraint on a pair (f, g)
================  =====  ==================================================
EQUIVARIANCE      1      f commutes with the gauge action
INCLUSION_SQUARE  2      g is f restricted to the correction subspace
DELTA_SQUARE      4      delta2 o g = delta1
SCALAR_C          8      c2 o g = c1
SCALAR_S          16     s2 o f = s1
================  =====  ==================================================

``STRICT`` sets every bit, ``LAX`` drops both scalar constraints. Strings
such as ``'EQUIVARIANCE, DELTA_SQUARE'``, ``'strict'`` or ``'~SCALAR_C'``
(everything but ``SCALAR_C``) are understood by `interpret_constraints`.
"""
import logging

from astropy.nddata.bitmask import interpret_bit_flags as ap_interpret_bit_flags

from .basic_utils import multiple_replace

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

EQUIVARIANCE = 2**0
INCLUSION_SQUARE = 2**1
DELTA_SQUARE = 2**2
SCALAR_C = 2**3
SCALAR_S = 2**4

STRICT = EQUIVARIANCE | INCLUSION_SQUARE | DELTA_SQUARE | SCALAR_C | SCALAR_S
LAX = EQUIVARIANCE | INCLUSION_SQUARE | DELTA_SQUARE

CONSTRAINTS = {
    'EQUIVARIANCE':     EQUIVARIANCE,
    'INCLUSION_SQUARE': INCLUSION_SQUARE,
    'DELTA_SQUARE':     DELTA_SQUARE,
    'SCALAR_C':         SCALAR_C,
    'SCALAR_S':         SCALAR_S,
}

PRESETS = {
    'STRICT': STRICT,
    'LAX':    LAX,
    'NONE':   0,
}

# Budgets of the exhaustive searches.
DEFAULT_BUDGET = 10**7
DEFAULT_FUNCTOR_BUDGET = 200000


def interpret_constraints(cfg):
    """Converts a constraint specification to a bit mask.

    Wraps `astropy.nddata.bitmask.interpret_bit_flags`, allowing the
    constraint mnemonics (in any case, with ``-`` or ``_``) to be used in
    place of integers.

    Parameters
    ----------
    cfg : int, str, None
        Bit mask, mnemonic list joined by ``,`` or ``+``, or a preset name.
        `None` and the empty string mean ``STRICT``. A leading ``~`` means
        every constraint except the listed ones.

    Returns
    -------
    bitmask : int
        Bit mask restricted to the known constraints.
    """
    if cfg is None:
        return STRICT
    if isinstance(cfg, str):
        text = cfg.strip().upper().replace('-', '_')
        if text == '':
            return STRICT
        if text in PRESETS:
            return PRESETS[text]
        text = multiple_replace(text, {k: str(v) for k, v in CONSTRAINTS.items()})
        try:
            bitmask = ap_interpret_bit_flags(text)
        except (ValueError, TypeError) as err:
            raise ValueError(f"unrecognised morphism constraints {cfg!r}: {err}") from err
    else:
        bitmask = ap_interpret_bit_flags(int(cfg))
    if bitmask is None:
        return STRICT
    return bitmask & STRICT


def constraints_to_mnemonics(cfg):
    """Interpret a bit mask and return the set of constraint mnemonics.

    >>> sorted(constraints_to_mnemonics(LAX))
    ['DELTA_SQUARE', 'EQUIVARIANCE', 'INCLUSION_SQUARE']
    """
    cfg = interpret_constraints(cfg)
    return {
        mnemonic
        for mnemonic, value in CONSTRAINTS.items()
        if (cfg & value)
    }


def describe_constraints(cfg):
    """Stable text form of a bit mask, used in reports."""
    cfg = interpret_constraints(cfg)
    for name, value in PRESETS.items():
        if cfg == value:
            return name.lower()
    names = [m for m, v in CONSTRAINTS.items() if cfg & v]
    return ','.join(names) if names else 'none'
