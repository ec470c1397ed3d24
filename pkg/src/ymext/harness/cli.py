"""
Command line entry point.

Every subcommand runs one library operation on a parsed instance and
emits a `~ymext.harness.report.Report`. The exit status is the report's:
0 confirmed, 2 hypothesis unmet, 3 counterexample, 4 budget exceeded and
5 invalid input.
"""
import argparse
import logging
import sys
import time
from pathlib import Path

from ..basic_utils import CORE_SHARES
from ..constraints import DEFAULT_BUDGET, describe_constraints, interpret_constraints
from ..category_order.coherence import READINGS, coherence_check
from ..category_order.maximality import MODES, density_check
from ..category_order.order import (build_preorder, greatest_element, hasse_edges,
                                    initial_objects, is_reflexive, is_transitive, iso_poset,
                                    non_identity_isomorphism, terminal_objects)
from ..constructions.classes import KINDS, build_class, existence_report, obstruction_report
from ..constructions.gauge import (gauge_fixings, nested_domain_check, pullback_type_extension,
                                   sigma_independence)
from ..constructions.lemmas import injectivize, retract_r_sigma
from ..errors import DomainMismatch, SearchBudgetExceeded, UsageError
from ..extensions.extension_ops import (classify_trivial, completion, coproduct,
                                        is_complete, is_injective, is_small,
                                        validate_extension, verify_coproduct)
from ..extensions.morphisms import hom_set, is_monomorphism
from .generate import PROFILES, SYMMETRIES, generate_instances, write_instances
from .instance import parse_instance
from .report import Report, collect_deviations, plain
from .theorems import THEOREMS, verify_theorem

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["main", "run_command", "build_parser"]

MAX_CORES = tuple(CORE_SHARES)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ext(e):
    return {'name': e.name, 'x': plain(e.x), 's_hat': plain(e.s_hat), 'c1': plain(e.c1),
            'c_fn': plain(e.c_fn), 'delta': plain(e.delta)}


def _morphism(m):
    return {'f': plain(m.f), 'g': plain(m.g)}


class _Session:
    """Parsed instance and resolved options of one command."""

    def __init__(self, args, report):
        self.args = args
        self.report = report
        self.inst = parse_instance(args.instance)
        report.digest = self.inst.digest()
        config = self.inst.config
        self.budget = args.budget or config.get('budget', DEFAULT_BUDGET)
        self.functor_budget = args.budget
        self.max_cores = args.max_cores or config.get('max_cores', 'none')

    @property
    def cfg(self):
        if self.args.cfg is not None:
            return interpret_constraints(self.args.cfg)
        return interpret_constraints(self.inst.config.get('cfg'))

    def ext_class(self, name):
        cl = self.inst.ext_class(name, self.args.cfg, self.budget, self.max_cores)
        self.report.count('members', len(cl))
        return cl

    def extension(self, name):
        return self.inst.extension(name), self.inst.extension_context(name)

    def fixing(self, ctx):
        fixings = gauge_fixings(ctx, self.budget)
        k = self.args.sigma
        if not 0 <= k < len(fixings):
            raise UsageError(f"--sigma {k} out of range: there are {len(fixings)} gauge fixings")
        return fixings[k]

    def finish(self, *classes):
        for cl in classes:
            self.report.count('hom_sets', cl.stats['hom_sets'])
            self.report.count('morphisms', cl.stats['morphisms'])


def cmd_validate(s):
    names = s.args.extensions or s.inst.names('extension')
    if not names:
        s.report.add('validate instance', 'confirmed', declarations=len(s.inst.declarations))
    for name in names:
        e, ctx = s.extension(name)
        result = validate_extension(ctx, e)
        if result.valid:
            s.report.add(f"validate {name}", 'confirmed')
        else:
            first = result.first
            s.report.add(f"validate {name}", 'invalid', first=first.code, message=first.message,
                         witness=first.witness, violations=[v.code for v in result.violations])


def cmd_homset(s):
    e1, ctx = s.extension(s.args.source)
    e2, ctx2 = s.extension(s.args.target)
    if ctx is not ctx2:
        raise DomainMismatch("the two extensions are declared over different contexts")
    cfg = s.cfg
    found = hom_set(ctx, e1, e2, cfg, s.budget, s.max_cores)
    s.report.count('hom_sets', 1)
    s.report.add(f"homset {e1.name} -> {e2.name}", 'info', count=len(found),
                 cfg=describe_constraints(cfg), morphisms=[_morphism(m) for m in found])


def cmd_poset(s):
    cl = s.ext_class(s.args.cls)
    leq = build_preorder(cl)
    p = iso_poset(cl)
    names = [cl[r].name for r in p.representatives]
    top = greatest_element(p)
    s.report.add(f"poset {s.args.cls}", 'info', members=cl.labels,
                 reflexive=is_reflexive(leq), transitive=is_transitive(leq),
                 antisymmetric=p.antisymmetric,
                 iso_classes=[[cl[k].name for k in block] for block in p.blocks],
                 hasse=[f"{names[a]} < {names[b]}" for a, b in hasse_edges(p)],
                 greatest=None if top is None else names[top])
    s.finish(cl)


def cmd_isoclasses(s):
    cl = s.ext_class(s.args.cls)
    blocks = cl.iso_classes()
    s.report.add(f"isoclasses {s.args.cls}", 'info', count=len(blocks),
                 iso_classes=[[cl[k].name for k in block] for block in blocks])
    s.finish(cl)


def cmd_terminal(s):
    cl = s.ext_class(s.args.cls)
    s.report.add(f"terminal {s.args.cls}", 'info', cfg=describe_constraints(cl.cfg),
                 terminal=[cl[k].name for k in terminal_objects(cl)],
                 initial=[cl[k].name for k in initial_objects(cl)])
    s.finish(cl)


def cmd_gaunt(s):
    cl = s.ext_class(s.args.cls)
    found = non_identity_isomorphism(cl)
    witness = None
    if found is not None:
        i, j, m = found
        witness = {'source': cl[i].name, 'target': cl[j].name, 'morphism': _morphism(m)}
    s.report.add(f"gaunt {s.args.cls}", 'info', gaunt=found is None, witness=witness)
    s.finish(cl)


def cmd_trivial_classify(s):
    e, ctx = s.extension(s.args.extension)
    kind = classify_trivial(ctx, e)
    s.report.add(f"trivial-classify {e.name}", 'info', kind=kind.kind,
                 identity_check=kind.identity_check)


def cmd_obstruction(s):
    e, ctx = s.extension(s.args.extension)
    report = obstruction_report(ctx, e, s.args.kind)
    s.report.add(f"obstruction {e.name} in {s.args.kind}", 'info', member=report.member,
                 failed=report.failed, only_injectivity=report.only_injectivity)


def cmd_completion(s):
    e, ctx = s.extension(s.args.extension)
    s.report.add(f"completion {e.name}", 'info', completion=_ext(completion(ctx, e)))


def cmd_injectivize(s):
    e, ctx = s.extension(s.args.extension)
    result, inclusion = injectivize(ctx, e)
    mono = is_monomorphism(ctx, result, e, inclusion, cfg=s.cfg)
    s.report.add(f"injectivize {e.name}", 'info', result=_ext(result),
                 complete=is_complete(ctx, result), injective=is_injective(ctx, result),
                 small=is_small(ctx, result), monomorphism=mono)


def cmd_retract(s):
    e, ctx = s.extension(s.args.extension)
    result, witness = retract_r_sigma(ctx, e, s.fixing(ctx), return_witness=True)
    s.report.add(f"retract {e.name}", 'info', sigma=s.args.sigma, result=_ext(result),
                 fixed=result == e, mu=witness.mu, mu_injective=witness.mu_injective)


def cmd_coproduct(s):
    family = [s.extension(name) for name in s.args.extensions]
    ctx = family[0][1]
    if any(c is not ctx for _, c in family):
        raise DomainMismatch("the extensions are declared over different contexts")
    members = [e for e, _ in family]
    glued, injections = coproduct(ctx, members, s.args.disjoint_corrections)
    tests = [s.inst.extension(n) for n in s.inst.names('extension')
             if s.inst.extension_context(n) is ctx]
    tests = [t for t in tests if validate_extension(ctx, t).valid] + [glued]
    verdict = verify_coproduct(ctx, members, glued, injections, tests, s.cfg, s.budget)
    s.report.add(f"coproduct {'+'.join(s.args.extensions)}",
                 'confirmed' if verdict.holds else 'counterexample',
                 coproduct=_ext(glued), cocones_checked=verdict.cocones_checked,
                 failure=verdict.failure)


def cmd_gauge_fixings(s):
    ctx = s.inst.context(s.args.context)
    fixings = gauge_fixings(ctx, s.budget)
    s.report.add(f"gauge-fixings {s.args.context}", 'info', count=len(fixings),
                 fixings=[plain(f.sigma) for f in fixings])


def cmd_pullback_ext(s):
    ctx = s.inst.context(s.args.context)
    x0 = s.inst.finset(s.args.domain)
    fn = s.inst.functional(s.args.functional)
    e, witness = pullback_type_extension(ctx, x0, fn, s.fixing(ctx))
    s.report.add(f"pullback-ext {s.args.context}", 'info', extension=_ext(e),
                 locus=plain(witness.pb), image=plain(witness.image),
                 embed_injective=witness.embed_injective,
                 invariance_established=witness.invariance_established)


def cmd_sigma_independence(s):
    ctx = s.inst.context(s.args.context)
    result = sigma_independence(ctx, s.inst.finset(s.args.domain),
                                s.inst.functional(s.args.functional), s.budget)
    s.report.add(f"sigma-independence {s.args.context}",
                 'confirmed' if result.holds else 'counterexample',
                 cardinalities=result.cardinalities,
                 pairs=[{'i': i, 'j': j, 'bijection': plain(b), 'ok': ok}
                        for i, j, b, ok in result.pairs])


def cmd_nested_check(s):
    ctx = s.inst.context(s.args.context)
    result = nested_domain_check(ctx, s.inst.finset(s.args.inner), s.inst.finset(s.args.outer),
                                 s.inst.functional(s.args.functional), s.fixing(ctx))
    if result.holds is None:
        verdict = 'unmet'
    else:
        verdict = 'confirmed' if result.holds else 'counterexample'
    s.report.add(f"nested-check {s.args.inner} in {s.args.outer}", verdict,
                 precondition=result.precondition, eta=result.eta, subset_ok=result.subset_ok,
                 commutes=result.commutes, reason=result.reason)


def cmd_build_class(s):
    ctx = s.inst.context(s.args.context)
    functionals = [s.inst.functional(f) for f in s.args.functional] or None
    palette = s.args.palette or s.inst.config.get('palette')
    cl = build_class(ctx, s.args.kind, functionals, palette, s.cfg, s.budget, s.max_cores)
    exists = existence_report(cl)
    s.report.add(f"build-class {s.args.kind}", 'info', members=[_ext(e) for e in cl],
                 nontrivial=exists.nontrivial, kinds=exists.kinds)
    s.report.count('members', len(cl))


def cmd_coherence(s):
    cl = s.ext_class(s.args.cls)
    domains = [s.inst.finset(d) for d in s.args.domain]
    verdict = coherence_check(cl, domains, s.args.mode, s.args.reading)
    s.report.add(f"coherence {s.args.cls} ({s.args.mode})",
                 'confirmed' if verdict.holds else 'counterexample',
                 coproducts_ok=verdict.coproducts_ok, total=verdict.total, gaunt=verdict.gaunt,
                 witness=verdict.witness, cause=verdict.cause,
                 families_checked=verdict.families_checked,
                 initial_objects=verdict.initial_objects)
    s.finish(cl)


def cmd_density(s):
    cl = s.ext_class(s.args.cls)
    candidate = s.inst.extension(s.args.candidate)
    kwargs = {'budget': s.budget}
    if s.functor_budget:
        kwargs['functor_budget'] = s.functor_budget
    verdict = density_check(cl, candidate, s.args.mode, **kwargs)
    s.report.add(f"density {s.args.cls} with {candidate.name} ({s.args.mode})",
                 'confirmed' if verdict.holds else 'counterexample',
                 subsets_checked=verdict.subsets_checked, failing_subset=verdict.failing_subset)
    s.finish(cl)


def cmd_verify_theorem(s):
    verify_theorem(s.args.theorem, s.inst, s.args.cfg, s.budget, s.functor_budget,
                   s.max_cores, report=s.report)


def cmd_generate(args, report):
    instances = generate_instances(args.seed, args.profile, args.count, args.shape)
    listed = [{'source': inst.source, 'digest': inst.digest()} for inst in instances]
    if args.dest:
        stem = f"{args.profile}-{args.seed}"
        paths = write_instances(instances, args.dest, stem)
        for entry, path in zip(listed, paths):
            entry['file'] = path.name
    report.add(f"generate {args.profile}", 'confirmed', seed=args.seed, instances=listed)


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--cfg', default=None,
                        help="morphism constraints, e.g. 'strict', 'lax' or '~SCALAR_S'")
    common.add_argument('--budget', type=int, default=None, help="search budget")
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--out', default=None, help="write the report here")
    common.add_argument('--format', choices=('text', 'structured'), default='text')
    common.add_argument('--max-cores', choices=MAX_CORES, default=None)
    common.add_argument('-v', '--verbose', action='count', default=0)
    return common


def build_parser():
    common = _common_options()
    ap = _Parser(prog='ymext', description="Exhaustive verifier for classes of extensions.")
    sub = ap.add_subparsers(dest='cmd', required=True, parser_class=_Parser)

    def add(name, func, *positional, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    p = add('validate', cmd_validate, 'instance')
    p.add_argument('extensions', nargs='*')
    p = add('homset', cmd_homset, 'instance', 'source', 'target')
    for name, func in (('poset', cmd_poset), ('isoclasses', cmd_isoclasses),
                       ('terminal', cmd_terminal), ('gaunt', cmd_gaunt)):
        p = add(name, func, 'instance')
        p.add_argument('cls', metavar='class')
    add('trivial-classify', cmd_trivial_classify, 'instance', 'extension')
    p = add('obstruction', cmd_obstruction, 'instance', 'extension')
    p.add_argument('kind', choices=KINDS)
    add('completion', cmd_completion, 'instance', 'extension')
    add('injectivize', cmd_injectivize, 'instance', 'extension')
    p = add('retract', cmd_retract, 'instance', 'extension')
    p.add_argument('--sigma', type=int, default=0)
    p = add('coproduct', cmd_coproduct, 'instance')
    p.add_argument('extensions', nargs='+')
    p.add_argument('--disjoint-corrections', action='store_true',
                   help="require correction subspaces to meet only in omega0")
    add('gauge-fixings', cmd_gauge_fixings, 'instance', 'context')
    for name, func in (('pullback-ext', cmd_pullback_ext),
                       ('sigma-independence', cmd_sigma_independence)):
        p = add(name, func, 'instance', 'context')
        p.add_argument('--domain', required=True)
        p.add_argument('--functional', required=True)
        p.add_argument('--sigma', type=int, default=0)
    p = add('nested-check', cmd_nested_check, 'instance', 'context')
    p.add_argument('--inner', required=True)
    p.add_argument('--outer', required=True)
    p.add_argument('--functional', required=True)
    p.add_argument('--sigma', type=int, default=0)
    p = add('build-class', cmd_build_class, 'instance', 'context')
    p.add_argument('kind', choices=KINDS)
    p.add_argument('--functional', action='append', default=[])
    p.add_argument('--palette', nargs='+', default=None)
    p = add('coherence', cmd_coherence, 'instance')
    p.add_argument('cls', metavar='class')
    p.add_argument('--domain', action='append', required=True)
    p.add_argument('--mode', choices=('maximality', 'universality'), default='maximality')
    p.add_argument('--reading', choices=READINGS, default='literal')
    p = add('density', cmd_density, 'instance')
    p.add_argument('cls', metavar='class')
    p.add_argument('candidate')
    p.add_argument('--mode', choices=MODES, default='maximal')
    p = sub.add_parser('verify-theorem', parents=[common])
    p.add_argument('theorem', choices=THEOREMS)
    p.add_argument('instance')
    p.set_defaults(func=cmd_verify_theorem)
    p = sub.add_parser('generate', parents=[common])
    p.add_argument('profile', choices=PROFILES)
    p.add_argument('--count', type=int, default=1)
    p.add_argument('--dest', default=None, help="directory to write the instances to")
    p.add_argument('--shape', choices=sorted(SYMMETRIES), default=None,
                   help="gauge symmetry of the symmetric profile")
    p.set_defaults(func=cmd_generate)
    return ap


def _execute(args, argv):
    report = Report(['ymext'] + list(argv))
    start = time.time()
    with collect_deviations() as collector:
        try:
            if args.cmd == 'generate':
                cmd_generate(args, report)
            else:
                args.func(_Session(args, report))
        except SearchBudgetExceeded as err:
            report.add('search budget', 'budget', what=err.what, size=err.size,
                       budget=err.budget)
        except (ValueError, OSError) as err:
            report.add('input', 'invalid', error=type(err).__name__, message=str(err))
    report.extend_deviations(collector.records)
    log.info('Total elapsed time = %g sec', time.time() - start)
    return report


def run_command(argv):
    """Run one command line and return its report.

    Parameters
    ----------
    argv : list of str
        Arguments after the program name.

    Returns
    -------
    Report
        Usage errors give a report with an ``invalid`` check.
    """
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as err:
        report = Report(['ymext'] + argv)
        report.add('usage', 'invalid', error='UsageError', message=str(err))
        return report
    return _execute(args, argv)


def _verbosity(argv):
    count = 0
    for arg in argv:
        if arg == '--verbose':
            count += 1
        elif arg.startswith('-') and not arg.startswith('--') and set(arg[1:]) == {'v'}:
            count += len(arg) - 1
    return count


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    level = (logging.WARNING, logging.INFO)[min(_verbosity(argv), 1)]
    if _verbosity(argv) > 1:
        level = logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    package_log = logging.getLogger('ymext')
    package_log.addHandler(handler)
    try:
        report = run_command(argv)
        out, fmt = _output_options(argv)
        text = report.render(fmt)
        if out:
            Path(out).write_text(text, encoding='utf-8')
        else:
            sys.stdout.write(text)
        return report.exit_code
    finally:
        package_log.removeHandler(handler)


def _output_options(argv):
    """``--out`` and ``--format`` as given, even when the rest failed to parse."""
    early = argparse.ArgumentParser(add_help=False)
    early.add_argument('--out', default=None)
    early.add_argument('--format', default='text')
    known, _ = early.parse_known_args(argv)
    fmt = known.format if known.format in ('text', 'structured') else 'text'
    return known.out, fmt
