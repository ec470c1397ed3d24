"""
Deterministic generation of small instances.

Every instance has a context with at most seven points in omega, a
trivial action on the base set and an injective base functional. The
profiles differ in the gauge group and the orbits outside the core:

chain
    Extra fixed points all carrying the same fresh value, so the
    pullback-type class is a chain with a terminal object.
antichain
    Two extra fixed points with distinct fresh values; the coherent class
    over their two domains is not totally ordered.
disjoint-core
    One extra point with a fresh value and one colliding with the value
    of ``conn_hat``, listed after it.
conflicting-orbits
    As disjoint-core, but the colliding point is listed before
    ``conn_hat``, so injectivization has to shrink.
symmetric
    A gauge group of order up to eight from `SYMMETRIES` acting on
    ``conn_hat`` and on the extra points, and two extended functionals
    ``s`` and ``s2`` that agree on the core. When there are two extra
    orbits, ``s`` gives them the same value.
"""
import logging
from pathlib import Path

import numpy as np

from .instance import InstanceBuilder

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["PROFILES", "PALETTE", "SYMMETRIES", "generate_instances", "generate_text",
           "write_instances"]

PROFILES = ('chain', 'antichain', 'disjoint-core', 'conflicting-orbits', 'symmetric')

# Nonzero values the generated functionals draw from.
PALETTE = ('1', '2', '3', '1/2')

# Generators in cycle notation, the orbits of conn_hat and the orbits
# outside the core.
SYMMETRIES = {
    'Z3': (['(h1 h2 h3)(a1 a2 a3)'], [['h1', 'h2', 'h3']], [['a1', 'a2', 'a3']]),
    'Z4': (['(h1 h2 h3 h4)(a1 a2)'], [['h1', 'h2', 'h3', 'h4']], [['a1', 'a2']]),
    'D4': (['(h1 h2 h3 h4)', '(h1 h3)'], [['h1', 'h2', 'h3', 'h4']], [['a']]),
    'S3': (['(h1 h2)', '(h1 h2 h3)'], [['h1', 'h2', 'h3']], [['a'], ['b']]),
    'Z2xZ2': (['(h1 h2)', '(a1 a2)'], [['h1', 'h2']], [['a1', 'a2'], ['b']]),
    'Z2xZ3': (['(h1 h2)', '(k1 k2 k3)'], [['h1', 'h2'], ['k1', 'k2', 'k3']], [['a']]),
}


def generate_instances(seed, profile, count=1, shape=None):
    """Build ``count`` instances of a profile from ``seed``.

    Parameters
    ----------
    seed : int

    profile : str
        One of `PROFILES`.

    count : int

    shape : str, optional
        Key of `SYMMETRIES` to use for every instance of the symmetric
        profile instead of drawing one.

    Returns
    -------
    list of InstanceFile
    """
    return [builder.build(source=f"{profile}-{seed}-{k}")
            for k, builder in enumerate(_builders(seed, profile, count, shape))]


def generate_text(seed, profile, count=1, shape=None):
    """Canonical text of the generated instances, in order."""
    return [builder.text() for builder in _builders(seed, profile, count, shape)]


def write_instances(instances, dest, stem):
    """Write instances as ``<stem>-<k>.inst`` under ``dest``; returns the paths."""
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, inst in enumerate(instances):
        path = dest / f"{stem}-{k}.inst"
        path.write_text(inst.text(), encoding='utf-8')
        paths.append(path)
    log.info('Wrote %d instances to %s', len(paths), dest)
    return paths


def _builders(seed, profile, count, shape=None):
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {', '.join(PROFILES)}")
    if shape is not None and (profile != 'symmetric' or shape not in SYMMETRIES):
        raise ValueError(f"shape {shape!r} needs the symmetric profile and one of "
                         f"{', '.join(SYMMETRIES)}")
    rng = np.random.default_rng(seed)
    return [_draw(rng, profile, seed, shape) for _ in range(count)]


def _draw(rng, profile, seed, shape=None):
    if profile == 'symmetric':
        return _draw_symmetric(rng, seed, shape)
    values = [PALETTE[k] for k in rng.permutation(len(PALETTE))]
    v_core, fresh = values[0], values[1:]
    unmatched = bool(rng.random() < 0.5)
    paired = profile == 'chain' and bool(rng.random() < 0.5)
    hats = ['h1', 'h2'] if paired else ['h1']

    if profile == 'chain':
        k = 1 if paired else int(rng.integers(1, 4))
        extras = {f"a{j}": fresh[0] for j in range(1, k + 1)}
        order = hats + list(extras)
        domains = {'dom_a': ['a1']}
    elif profile == 'antichain':
        extras = {'b1': fresh[0], 'b2': fresh[1]}
        order = hats + list(extras)
        domains = {'dom_b1': ['b1'], 'dom_b2': ['b2']}
    else:
        extras = {'a': fresh[0], 'b': v_core}
        order = hats + ['a', 'b'] if profile == 'disjoint-core' else ['b'] + hats + ['a']
        domains = {'dom_a': ['a']}

    omega = ['w0'] + order
    conn = ['d0', 'd1'] + (['d2'] if unmatched else [])
    base_values = {'d0': '0', 'd1': v_core}
    if unmatched:
        base_values['d2'] = fresh[2]
    s_values = {'w0': '0'}
    s_values.update((h, v_core) for h in hats)
    s_values.update(extras)
    s_values = {x: s_values[x] for x in omega}

    generators = ['(h1 h2)'] if paired else None
    b = _context(seed, omega, conn, hats, generators, base_values, {'s': s_values})

    # One incomplete point outside the core, next to a complete one in conn_hat.
    loose = next(x for x in omega if x in extras and s_values[x] != v_core)
    c1 = ['w0', 'h1', loose]
    b.add('extension', 'e_full', context='ctx', x=omega, s_hat=s_values, c1=c1,
          c_fn={'w0': '0', 'h1': '0', loose: s_values[loose]},
          delta={'w0': 'd0', 'h1': 'd1', loose: 'd0'})

    core = ['w0'] + hats
    for name, points in domains.items():
        b.add('subset', name, of='omega', elements=[x for x in omega if x in core + points])
    b.add('class', 'Pb', context='ctx', build='Pb', functionals=['s'])
    b.add('class', 'Coh', context='ctx', build='Coh', functionals=['s'])

    b.add('theorem', 'A', pairs=['Pb:Pb'])
    if profile == 'chain':
        b.add('theorem', 'B', target='Pb', domains=list(domains), sources=['Pb'])
    else:
        b.add('theorem', 'C', context='ctx', functionals=['s'], domains=list(domains))
    log.debug('Drew a %s instance with %d points', profile, len(omega))
    return b


def _draw_symmetric(rng, seed, shape=None):
    drawn = sorted(SYMMETRIES)[int(rng.integers(len(SYMMETRIES)))]
    shape = drawn if shape is None else shape
    generators, hat_orbits, extra_orbits = SYMMETRIES[shape]
    values = [PALETTE[k] for k in rng.permutation(len(PALETTE))]
    hat_values, fresh = values[:len(hat_orbits)], values[len(hat_orbits):]
    unmatched = bool(rng.random() < 0.5)

    hats = [h for orbit in hat_orbits for h in orbit]
    omega = ['w0'] + hats + [x for orbit in extra_orbits for x in orbit]
    matched = [f"d{k}" for k in range(1, len(hat_orbits) + 1)]
    conn = ['d0'] + matched + ([f"d{len(matched) + 1}"] if unmatched else [])
    base_values = dict(zip(['d0'] + matched, ['0'] + hat_values))
    if unmatched:
        base_values[conn[-1]] = fresh[0]

    core_values = {'w0': '0'}
    for orbit, v in zip(hat_orbits, hat_values):
        core_values.update((h, v) for h in orbit)
    s_values, s2_values = dict(core_values), dict(core_values)
    for orbit in extra_orbits:
        s_values.update((x, fresh[0]) for x in orbit)
        s2_values.update((x, fresh[-1]) for x in orbit)
    functionals = {'s': {x: s_values[x] for x in omega},
                   's2': {x: s2_values[x] for x in omega}}
    b = _context(seed, omega, conn, hats, generators, base_values, functionals)

    reps = [orbit[0] for orbit in hat_orbits]
    loose = extra_orbits[0][0]
    delta = {'w0': 'd0', loose: 'd0'}
    delta.update(zip(reps, matched))
    c_fn = {c: '0' for c in ['w0'] + reps}
    c_fn[loose] = s_values[loose]
    b.add('extension', 'e_full', context='ctx', x=omega, s_hat=functionals['s'],
          c1=['w0'] + reps + [loose], c_fn=c_fn, delta=delta)

    core = ['w0'] + hats
    for name, orbit in zip(('dom_a', 'dom_b'), extra_orbits):
        b.add('subset', name, of='omega', elements=[x for x in omega if x in core + orbit])
    b.add('class', 'Pb', context='ctx', build='Pb', functionals=['s', 's2'])
    b.add('class', 'Coh', context='ctx', build='Coh', functionals=['s'])
    log.debug('Drew a symmetric instance over %s with %d points', shape, len(omega))
    return b


def _context(seed, omega, conn, hats, generators, base_values, functionals):
    """Builder holding the context ``ctx`` over a trivial action on ``conn``."""
    b = InstanceBuilder()
    b.add('config', cfg='strict', seed=str(seed))
    b.add('set', 'omega', elements=omega, basepoint='w0')
    b.add('set', 'conn', elements=conn, basepoint='d0')
    b.add('subset', 'conn_hat', of='omega', elements=hats)
    b.add('permgroup', 'gau_hat', carrier='omega', generators=generators)
    b.add('group', 'triv', {'row.e': ['e']}, elements=['e'], identity='e')
    b.add('action', 'gau', group='triv', carrier='conn')
    b.add('hom', 'xi', source='triv', target='gau_hat', table={'e': 'g0'})
    b.add('functional', 'base_s', on='conn', values=base_values)
    for name, values in functionals.items():
        b.add('functional', name, on='omega', values=values)
    b.add('context', 'ctx', omega='omega', gau_hat='gau_hat', conn_hat='conn_hat',
          conn='conn', gau='gau', xi='xi', base_s='base_s')
    return b
