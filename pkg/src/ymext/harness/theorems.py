"""
Theorem-level verification over a parsed instance.

Each theorem is checked hypothesis by hypothesis. A failed hypothesis is
reported as ``unmet`` (exit status 2); only a conclusion that fails while
its hypotheses hold is a ``counterexample`` (exit status 3).

A
    For every declared pair ``E0:E1`` whose target has a terminal object,
    ``E0`` is internally maximal and universal to ``E1`` in every mode, and
    the terminal object makes both properties dense.
B
    If the target class is coherent for the declared domains, the class
    they generate has a greatest iso class and every source class is
    maximal to it.
C
    The coherent class over mutually disjoint extended domains is closed
    under coproducts, totally ordered, has a greatest iso class and
    receives every source class maximally.
"""
import logging
import time

from ..constraints import DEFAULT_BUDGET, DEFAULT_FUNCTOR_BUDGET, describe_constraints
from ..category_order.coherence import class_E_of_I, coherence_check
from ..category_order.maximality import MODES, check_maximality, density_check
from ..category_order.order import (build_preorder, greatest_element, is_gaunt, is_total,
                                    iso_poset, terminal_objects)
from ..constructions.classes import build_class
from ..errors import ResolutionError
from .instance import split_list
from .report import Report, collect_deviations

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["verify_theorem", "THEOREMS"]

THEOREMS = ('A', 'B', 'C')


def verify_theorem(name, instance, cfg=None, budget=None, functor_budget=None,
                   max_cores=None, report=None):
    """Check the hypotheses and conclusions of a theorem on an instance.

    Parameters
    ----------
    name : {'A', 'B', 'C'}

    instance : InstanceFile
        Must declare a ``[theorem <name>]`` section.

    cfg : int or str, optional
        Overrides the constraint sets of the classes involved.

    budget, functor_budget : int, optional

    report : Report, optional
        Report to add the checks to; a new one is made otherwise.

    Returns
    -------
    Report

    Raises
    ------
    SearchBudgetExceeded
        An exhaustive search exceeds its budget.
    """
    if name not in THEOREMS:
        raise ValueError(f"unknown theorem {name!r}")
    if report is None:
        report = Report(['verify-theorem', name], instance.digest())
    budget = budget or instance.config.get('budget', DEFAULT_BUDGET)
    functor_budget = functor_budget or DEFAULT_FUNCTOR_BUDGET
    spec = instance.theorem(name)
    start = time.time()
    run = _Run(instance, report, cfg, budget, functor_budget, max_cores)
    with collect_deviations() as collector:
        if name == 'A':
            run.theorem_a(spec)
        elif name == 'B':
            run.theorem_b(spec)
        else:
            run.theorem_c(spec)
    report.extend_deviations(collector.records)
    run.count_work()
    log.info('Theorem %s: %s in %g sec', name, report.status, time.time() - start)
    return report


class _Run:
    """State shared by the checks of one theorem."""

    def __init__(self, instance, report, cfg, budget, functor_budget, max_cores):
        self.instance = instance
        self.report = report
        self.cfg = cfg
        self.budget = budget
        self.functor_budget = functor_budget
        self.max_cores = max_cores
        self.used = []

    def ext_class(self, name):
        cl = self.instance.ext_class(name, self.cfg, self.budget, self.max_cores)
        self._use(cl)
        return cl

    def _use(self, cl):
        if all(cl.stats is not other.stats for other in self.used):
            self.used.append(cl)
        return cl

    def count_work(self):
        for cl in self.used:
            self.report.count('hom_sets', cl.stats['hom_sets'])
            self.report.count('morphisms', cl.stats['morphisms'])

    def _binding(self, spec, key, required=True, default=None):
        value = spec.bindings.get(key, default)
        if required and not value:
            raise ResolutionError(f"theorem {spec.statement} lacks {key!r}", spec.statement,
                                  spec.line)
        return value

    # -- A -------------------------------------------------------------

    def theorem_a(self, spec):
        for pair in split_list(self._binding(spec, 'pairs')):
            source, _, target = pair.partition(':')
            if not target:
                raise ResolutionError(f"theorem A pair {pair!r} is not 'E0:E1'", 'A', spec.line)
            self._pair_a(source, target)

    def _pair_a(self, source, target):
        e0, e1 = self.ext_class(source), self.ext_class(target)
        tag = f"A[{source}:{target}]"
        terminals = terminal_objects(e1)
        if not terminals:
            self.report.add(f"{tag} terminal object", 'unmet',
                            reason="hypothesis unmet: no terminal object",
                            cfg=describe_constraints(e1.cfg), members=e1.labels)
            return
        terminal = e1[terminals[0]]
        self.report.add(f"{tag} terminal object", 'confirmed', terminal=terminal.name,
                        cfg=describe_constraints(e1.cfg))
        gaunt = is_gaunt(e1)
        for mode in MODES:
            if mode == 'universal-iso' and not gaunt:
                self.report.add(f"{tag} {mode}", 'skipped', reason="class is not gaunt")
                continue
            verdict = check_maximality(e0, e1, mode, self.budget, self.functor_budget)
            self.report.add(f"{tag} {mode}", 'confirmed' if verdict.holds else 'counterexample',
                            witness=verdict.witness, counterexample=verdict.counterexample,
                            reason=verdict.reason)
        for mode in ('maximal', 'universal'):
            dense = density_check(e1, terminal, mode, source=e0, budget=self.budget,
                                  functor_budget=self.functor_budget)
            self.report.add(f"{tag} dense {mode}", 'confirmed' if dense.holds else 'counterexample',
                            candidate=terminal.name, subsets_checked=dense.subsets_checked,
                            failing_subset=dense.failing_subset)

    # -- B -------------------------------------------------------------

    def theorem_b(self, spec):
        target = self.ext_class(self._binding(spec, 'target'))
        domains = [self.instance.finset(d) for d in split_list(self._binding(spec, 'domains'))]
        mode = self._binding(spec, 'mode', required=False, default='maximality')
        reading = self._binding(spec, 'reading', required=False, default='literal')
        coherent = coherence_check(target, domains, mode, reading)
        if not coherent.holds:
            self.report.add(f"B coherence ({mode})", 'unmet',
                            reason=f"hypothesis unmet: {coherent.cause}",
                            witness=coherent.witness, families_checked=coherent.families_checked)
            return
        self.report.add(f"B coherence ({mode})", 'confirmed',
                        families_checked=coherent.families_checked,
                        initial_objects=coherent.initial_objects)

        generated = self._use(class_E_of_I(target, len(domains), reading))
        self._greatest('B', generated)
        strict_mode = 'maximal' if mode == 'maximality' else 'universal-iso'
        sources = split_list(self._binding(spec, 'sources', required=False, default=''))
        for source in sources:
            self._source_maximal('B', source, self.ext_class(source), generated, strict_mode)

    # -- C -------------------------------------------------------------

    def theorem_c(self, spec):
        inst = self.instance
        ctx = inst.context(self._binding(spec, 'context'))
        domains = [inst.finset(d) for d in split_list(self._binding(spec, 'domains'))]
        problem = _disjoint_core_problem(ctx, domains)
        if problem:
            self.report.add("C disjoint domains", 'unmet', reason=f"hypothesis unmet: {problem}")
            return
        self.report.add("C disjoint domains", 'confirmed', domains=[list(d) for d in domains])

        functionals = split_list(self._binding(spec, 'functionals', required=False, default=''))
        functionals = [inst.functional(f) for f in functionals] or None
        palette = split_list(self._binding(spec, 'palette', required=False, default='')) or \
            inst.config.get('palette')
        cfg = self.cfg if self.cfg is not None else inst.config.get('cfg')
        allowed = _generated_domains(ctx, domains)
        classes = {}
        for kind in ('Coh', 'Pb'):
            full = build_class(ctx, kind, functionals, palette, cfg, self.budget,
                               self.max_cores or inst.config.get('max_cores', 'none'))
            keep = [k for k, e in enumerate(full) if e.x in allowed]
            classes[kind] = self._use(full.subclass(keep, name=kind))
        coh = classes['Coh']
        if not len(coh):
            self.report.add("C coherent members", 'unmet',
                            reason="hypothesis unmet: no coherent extension over the domains")
            return
        self.report.add("C coherent members", 'confirmed', members=coh.labels)

        coherent = coherence_check(coh, domains, 'maximality')
        if not coherent.holds:
            if coherent.coproducts_ok:
                log.warning('Coherent class over disjoint domains is not totally ordered: %s',
                            ', '.join(coherent.witness),
                            extra={'deviation': 'coherent-order-not-total'})
            self.report.add("C coproducts and totality", 'counterexample', cause=coherent.cause,
                            witness=coherent.witness, families_checked=coherent.families_checked)
            return
        self.report.add("C coproducts and totality", 'confirmed',
                        families_checked=coherent.families_checked)
        self._greatest('C', coh)

        sources = split_list(self._binding(spec, 'sources', required=False, default=''))
        if not sources:
            self._source_maximal('C', 'Coh', coh, coh, 'maximal')
        for source in sources:
            self._source_maximal('C', source, self.ext_class(source), coh, 'maximal')

        pb = classes['Pb']
        total, pair = is_total(build_preorder(pb))
        self.report.add("C Pb order total", 'confirmed' if total else 'counterexample',
                        incomparable=None if total else [pb[pair[0]].name, pb[pair[1]].name])

    # -- shared --------------------------------------------------------

    def _greatest(self, tag, cl):
        poset = iso_poset(cl)
        top = greatest_element(poset)
        if top is None:
            self.report.add(f"{tag} greatest element", 'counterexample',
                            iso_classes=[[cl[k].name for k in block] for block in poset.blocks])
            return None
        self.report.add(f"{tag} greatest element", 'confirmed',
                        greatest=cl[poset.representatives[top]].name,
                        iso_classes=len(poset.blocks))
        return top

    def _source_maximal(self, tag, name, source, target, mode):
        if not len(source):
            self.report.add(f"{tag} {name} {mode}", 'skipped', reason="empty source class")
            return
        verdict = check_maximality(source, target, mode, self.budget, self.functor_budget)
        if not verdict.hypothesis_met:
            outcome = 'unmet'
        else:
            outcome = 'confirmed' if verdict.holds else 'counterexample'
        self.report.add(f"{tag} {name} {mode}", outcome, witness=verdict.witness,
                        counterexample=verdict.counterexample, reason=verdict.reason)


def _disjoint_core_problem(ctx, domains):
    """Why the domains fail to be extended domains meeting only in the core."""
    if not domains:
        return "no domains declared"
    core = set(ctx.core)
    for d in domains:
        if not core <= set(d) or not d.issubset(ctx.omega):
            return f"{list(d)} does not lie between the core and omega"
        if not ctx.gau_hat.is_invariant(d):
            return f"{list(d)} is not gauge invariant"
    for a in range(len(domains)):
        for b in range(a + 1, len(domains)):
            extra = (set(domains[a]) & set(domains[b])) - core
            if extra:
                return f"domains {a} and {b} share {sorted(extra)[0]!r} outside the core"
    return None


def _generated_domains(ctx, domains):
    """The core joined with every subfamily of the domains."""
    found = {ctx.core}
    for d in domains:
        found |= {ctx.omega.subset(set(x) | set(d)) for x in found}
    return found
