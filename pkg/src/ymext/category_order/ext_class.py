"""
A class of extensions over one context, regarded as a category.

Hom sets are computed on demand and cached; views on subclasses share
the cache of their parent, so subset sweeps never search the same pair
twice.
"""
import logging

from ..constraints import DEFAULT_BUDGET, describe_constraints, interpret_constraints
from ..errors import InvalidExtension, InvalidStructure
from ..extensions.extension_class import ExtMorphism
from ..extensions.extension_ops import validate_extension
from ..extensions.morphisms import hom_set, iso_classes

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["ExtClass"]


class ExtClass:
    """A finite class of valid extensions over one context.

    Parameters
    ----------
    context : ExtensionContext

    members : list of Extension
        Structurally distinct, valid extensions.

    cfg : int or str
        Morphism constraints used for every hom set of the class.

    budget : int
        Budget of each hom-set search.

    max_cores : str
        Multiprocessing setting passed to the hom-set search.

    name : str, optional
    """

    def __init__(self, context, members, cfg=None, budget=DEFAULT_BUDGET,
                 max_cores='none', name=None, _cache=None, _stats=None):
        members = list(members)
        seen = set()
        for e in members:
            if e in seen:
                raise InvalidStructure(f"class lists {e.name} twice")
            seen.add(e)
            if _cache is None:
                report = validate_extension(context, e)
                if not report.valid:
                    raise InvalidExtension(
                        f"{e.name} violates {report.first.code}: {report.first.message}", report)
        self.context = context
        self.members = members
        self.cfg = interpret_constraints(cfg)
        self.budget = budget
        self.max_cores = max_cores
        self.name = name
        self._cache = {} if _cache is None else _cache
        self.stats = {'hom_sets': 0, 'morphisms': 0} if _stats is None else _stats
        self._iso = None

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, k):
        return self.members[k]

    def __repr__(self):
        return (f"ExtClass({self.name or ''} size={len(self)}, "
                f"cfg={describe_constraints(self.cfg)})")

    @property
    def labels(self):
        return [e.name for e in self.members]

    def hom_between(self, e1, e2):
        """Cached hom set between two extensions over the class context."""
        key = (e1, e2)
        if key not in self._cache:
            self._cache[key] = hom_set(self.context, e1, e2, self.cfg, self.budget,
                                       self.max_cores)
            self.stats['hom_sets'] += 1
            self.stats['morphisms'] += len(self._cache[key])
        return self._cache[key]

    def hom(self, i, j):
        return self.hom_between(self.members[i], self.members[j])

    def count(self, i, j):
        return len(self.hom(i, j))

    def identity(self, i):
        return ExtMorphism.identity(self.members[i])

    def index(self, e):
        return self.members.index(e)

    def subclass(self, indices=None, extra=(), name=None):
        """A view on some members plus extra extensions, sharing the cache."""
        chosen = [] if indices is None else [self.members[k] for k in indices]
        for e in extra:
            if e not in chosen:
                chosen.append(e)
        for e in extra:
            report = validate_extension(self.context, e)
            if not report.valid:
                raise InvalidExtension(f"{e.name} is not a valid extension", report)
        return ExtClass(self.context, chosen, self.cfg, self.budget, self.max_cores,
                        name=name, _cache=self._cache, _stats=self.stats)

    def iso_classes(self):
        """Member indices grouped by isomorphism."""
        if self._iso is None:
            self._iso = iso_classes(self.context, self.members, self.cfg, self.budget,
                                    hom=self.hom)
        return self._iso
