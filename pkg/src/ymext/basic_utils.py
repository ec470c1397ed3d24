import logging
import multiprocessing
import re
from fractions import Fraction

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["multiple_replace", "parse_rational", "format_rational", "powerset",
           "product_size", "chunk", "split_candidates", "CORE_SHARES"]


def multiple_replace(string, rep_dict):
    """Single-pass replacement of multiple substrings

    Similar to `str.replace`, except that a dictionary of replacements
    can be specified.

    The replacements are done in a single-pass. This means that a previous
    replacement will not be replaced by a subsequent match.

    Parameters
    ----------
    string: str
        The source string to have replacements done on it.

    rep_dict: dict
        The replacements were key is the input substring and
        value is the replacement

    Returns
    -------
    replaced: str
        New string with the replacements done

    Examples
    --------
    >>> multiple_replace('SCALAR_C + SCALAR', {'SCALAR_C': '8', 'SCALAR': '24'})
    '8 + 24'

    """
    pattern = re.compile(
        "|".join([re.escape(k) for k in sorted(rep_dict, key=len, reverse=True)]),
        flags=re.DOTALL
    )
    return pattern.sub(lambda x: rep_dict[x.group(0)], string)


def parse_rational(text):
    """Exact rational from ``p``, ``-p`` or ``p/q`` text.

    >>> parse_rational('-3/6')
    Fraction(-1, 2)
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not re.fullmatch(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*", str(text)):
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(str(text).replace(" ", ""))


def format_rational(value):
    """Canonical text of a rational: ``p`` when integral, else ``p/q``.

    >>> format_rational(Fraction(4, 2)), format_rational(Fraction(-1, 3))
    ('2', '-1/3')
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def powerset(items):
    """All subsets of ``items`` as tuples, ordered by bitmask.

    >>> list(powerset('ab'))
    [(), ('a',), ('b',), ('a', 'b')]
    """
    items = list(items)
    for mask in range(2 ** len(items)):
        yield tuple(x for k, x in enumerate(items) if mask >> k & 1)


def product_size(factors):
    """Size of the cartesian product of the given sequences."""
    size = 1
    for f in factors:
        size *= len(f)
    return size


def chunk(seq, number_slices):
    """Split ``seq`` into at most ``number_slices`` contiguous pieces."""
    seq = list(seq)
    number_slices = max(1, min(number_slices, len(seq)))
    step, extra = divmod(len(seq), number_slices)
    pieces, start = [], 0
    for k in range(number_slices):
        stop = start + step + (1 if k < extra else 0)
        pieces.append(seq[start:stop])
        start = stop
    return pieces


# Share of the available cores a hom-set search may occupy.
CORE_SHARES = {'none': 0, 'quarter': 4, 'half': 2, 'all': 1}


def split_candidates(candidates, max_cores):
    """Distribute the candidate images of the first search slot over workers.

    Parameters
    ----------
    candidates : sequence
        Images the first slot of a hom-set search may take.

    max_cores : str
        'none' keeps the search in this process; 'quarter', 'half' and
        'all' use that share of ``multiprocessing.cpu_count()``, never
        more workers than there are candidates.

    Returns
    -------
    list of list
        Contiguous pieces of ``candidates``, in order; a single piece
        means no worker processes are needed.
    """
    if max_cores not in CORE_SHARES:
        raise ValueError(f"max_cores must be one of {', '.join(CORE_SHARES)}, not {max_cores!r}")
    if max_cores == 'none':
        return [list(candidates)]
    workers = multiprocessing.cpu_count() // CORE_SHARES[max_cores] or 1
    log.debug('Splitting %d candidates over at most %d workers', len(candidates), workers)
    return chunk(candidates, workers)
