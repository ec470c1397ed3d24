"""
Instance files: a line-oriented text format declaring finite sets, groups,
actions, functionals, contexts, extensions, classes and theorem checks.

A file is a sequence of sections::

    # comment
    [set omega]
    elements = w0, a, b
    basepoint = w0

    [functional s]
    on = omega
    values = w0:0, a:1, b:1/2

Every section is ``[kind name]`` (``[config]`` takes no name) followed by
``key = value`` bindings. Lists are comma separated; tables are lists of
``key:value`` pairs; rationals are written ``p`` or ``p/q``. Names may be
used before they are declared. The complete grammar is documented with
the harness.
"""
import hashlib
import logging
import re
from collections import namedtuple
from pathlib import Path

from ..basic_utils import format_rational
from ..constraints import DEFAULT_BUDGET, interpret_constraints
from ..errors import ParseError, ResolutionError
from ..extensions.extension_class import Extension, ExtensionContext
from ..finite_sets.finite_class import FinMap, FinSet, RatFn
from ..group_actions.group_class import FinGroup, GroupAction, GroupHom, parse_cycles

log = logging.getLogger(__name__)
log.setLevel(logging.DEBUG)

__all__ = ["Section", "InstanceFile", "InstanceBuilder", "parse_instance",
           "parse_instance_text", "serialize_instance", "SECTION_KINDS"]

Section = namedtuple('Section', ['kind', 'name', 'items', 'line'])

# Allowed keys per kind; a trailing '.' admits any key with that prefix.
SECTION_KINDS = {
    'set': ('elements', 'basepoint'),
    'subset': ('of', 'elements'),
    'group': ('elements', 'identity', 'row.'),
    'permgroup': ('carrier', 'generators'),
    'action': ('group', 'carrier', 'natural', 'act.'),
    'hom': ('source', 'target', 'table'),
    'map': ('domain', 'codomain', 'table'),
    'functional': ('on', 'values'),
    'context': ('omega', 'gau_hat', 'conn_hat', 'conn', 'gau', 'xi', 'base_s', 'embedding'),
    'extension': ('context', 'x', 's_hat', 'c1', 'c_fn', 'delta'),
    'class': ('context', 'members', 'build', 'functionals', 'palette', 'cfg'),
    'theorem': ('pairs', 'target', 'domains', 'sources', 'reading', 'mode',
                'context', 'functionals', 'palette'),
    'config': ('cfg', 'budget', 'seed', 'palette', 'max_cores'),
}

THEOREMS = ('A', 'B', 'C')

_HEADER = re.compile(r"^\[\s*(?P<kind>[A-Za-z][\w-]*)(?:\s+(?P<name>[^\s\]]+))?\s*\]$")
_BINDING = re.compile(r"^(?P<key>[A-Za-z_][\w.\-]*)\s*=\s*(?P<value>.*)$")

ClassSpec = namedtuple('ClassSpec',
                       ['name', 'context', 'members', 'build', 'functionals', 'palette', 'cfg'])

TheoremSpec = namedtuple('TheoremSpec', ['statement', 'bindings', 'line'])


def normalize_value(value):
    """Canonical spelling of a binding value: single spaces, ``, `` and ``:``."""
    parts = []
    for part in value.split(','):
        part = ' '.join(part.split())
        parts.append(re.sub(r"\s*:\s*", ":", part))
    if parts == ['']:
        return ''
    return ', '.join(parts)


def split_list(value):
    return [part.strip() for part in value.split(',') if part.strip()]


def split_pairs(value, line=None):
    pairs = []
    for item in split_list(value):
        if ':' not in item:
            raise ParseError(f"expected 'key:value' but found {item!r}", line)
        key, val = item.split(':', 1)
        pairs.append((key.strip(), val.strip()))
    return pairs


def _column(raw, text):
    return raw.find(text) + 1 if text in raw else 1


def parse_instance_text(text, source=None):
    """Parse instance text into an `InstanceFile`.

    Raises
    ------
    ParseError
        Malformed lines, unknown section kinds, duplicate keys or names.
    ResolutionError
        A reference does not resolve or a declared structure is invalid.
    """
    sections = []
    current = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split('#', 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith('['):
            match = _HEADER.match(stripped)
            if match is None:
                raise ParseError("malformed section header", lineno, _column(raw, '['))
            kind, name = match.group('kind'), match.group('name')
            if kind not in SECTION_KINDS:
                raise ParseError(f"unknown section kind {kind!r}", lineno, _column(raw, kind))
            if name is None and kind != 'config':
                raise ParseError(f"section {kind!r} needs a name", lineno, _column(raw, '['))
            key = (kind, name) if kind in ('theorem', 'config') else name
            if key in seen:
                raise ParseError(f"duplicate declaration of {name or kind!r}", lineno,
                                 _column(raw, name or kind))
            seen.add(key)
            current = [kind, name, [], lineno]
            sections.append(current)
            continue
        match = _BINDING.match(stripped)
        if match is None:
            raise ParseError("expected 'key = value' or a section header", lineno,
                             len(raw) - len(raw.lstrip()) + 1)
        if current is None:
            raise ParseError("binding outside of any section", lineno, 1)
        key = match.group('key')
        if any(k == key for k, _, _ in current[2]):
            raise ParseError(f"duplicate key {key!r}", lineno, _column(raw, key))
        current[2].append((key, normalize_value(match.group('value')), lineno))
    sections = [Section(kind, name, tuple(items), line) for kind, name, items, line in sections]
    return InstanceFile(sections, source=source)


def parse_instance(path):
    """Read and parse an instance file."""
    path = Path(path)
    log.debug('Reading instance %s', path)
    return parse_instance_text(path.read_text(encoding='utf-8'), source=str(path))


def serialize_instance(instance):
    """Canonical text of an instance; parsing it gives an equal instance."""
    blocks = []
    for sec in instance.sections:
        header = f"[{sec.kind}]" if sec.name is None else f"[{sec.kind} {sec.name}]"
        lines = [header] + [f"{key} = {value}" for key, value, _ in sec.items]
        blocks.append('\n'.join(lines))
    return '\n\n'.join(blocks) + '\n'


class InstanceFile:
    """A parsed and resolved instance.

    Structures are resolved on construction, so an `InstanceFile` only
    exists when every declaration is valid. Classes are materialized on
    request by `ext_class`, since they depend on the constraint set and
    budget in force.

    Parameters
    ----------
    sections : list of Section

    source : str, optional
        Where the text came from, for messages.
    """

    def __init__(self, sections, source=None):
        self.sections = list(sections)
        self.source = source
        self.kinds = {}
        self.declarations = {}
        self.objects = {}
        self.classes = {}
        self.theorems = {}
        self.config = {}
        self._resolving = set()
        self._built = {}
        for sec in self.sections:
            self._check_keys(sec)
            if sec.kind == 'theorem':
                if sec.name not in THEOREMS:
                    raise ResolutionError(f"unknown theorem {sec.name!r}", sec.name, sec.line)
                bindings = {key: value for key, value, _ in sec.items}
                self.theorems[sec.name] = TheoremSpec(sec.name, bindings, sec.line)
            elif sec.kind == 'config':
                self.config = self._config(sec)
            else:
                self.kinds[sec.name] = sec.kind
                self.declarations[sec.name] = sec
        for name in self.declarations:
            self._resolve(name)

    def __eq__(self, other):
        if not isinstance(other, InstanceFile):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"InstanceFile({self.source or ''} {len(self.sections)} sections)"

    def canonical(self):
        return tuple((sec.kind, sec.name, tuple((k, v) for k, v, _ in sec.items))
                     for sec in self.sections)

    def text(self):
        return serialize_instance(self)

    def digest(self):
        """SHA-256 of the canonical text."""
        return hashlib.sha256(self.text().encode('utf-8')).hexdigest()

    def names(self, kind):
        """Declared names of one kind, in file order."""
        return [name for name, k in self.kinds.items() if k == kind]

    # -- lookups -------------------------------------------------------

    def _lookup(self, name, kinds, what):
        if name not in self.kinds:
            raise ResolutionError(f"undeclared {what} {name!r}", name)
        if self.kinds[name] not in kinds:
            raise ResolutionError(f"{name!r} is a {self.kinds[name]}, not a {what}", name,
                                  self.declarations[name].line)
        return self._resolve(name)

    def finset(self, name):
        found = self._lookup(name, ('set', 'subset', 'permgroup'), 'set')
        return found if isinstance(found, FinSet) else found[1].carrier

    def group(self, name):
        found = self._lookup(name, ('group', 'permgroup'), 'group')
        return found if isinstance(found, FinGroup) else found[0]

    def action(self, name):
        found = self._lookup(name, ('action', 'permgroup'), 'action')
        return found if isinstance(found, GroupAction) else found[1]

    def hom(self, name):
        return self._lookup(name, ('hom',), 'homomorphism')

    def finmap(self, name):
        return self._lookup(name, ('map',), 'map')

    def functional(self, name):
        return self._lookup(name, ('functional',), 'functional')

    def context(self, name):
        return self._lookup(name, ('context',), 'context')

    def extension(self, name):
        """The extension declared as ``name``, labelled with its name."""
        return self._lookup(name, ('extension',), 'extension')

    def extension_context(self, name):
        self.extension(name)
        return self.context(self._get(self.declarations[name], 'context'))

    def basepoint(self, name):
        sec = self.declarations.get(name)
        if sec is None or sec.kind != 'set':
            raise ResolutionError(f"{name!r} is not a set declaration with a basepoint", name)
        value = dict((k, v) for k, v, _ in sec.items).get('basepoint')
        if not value:
            raise ResolutionError(f"set {name!r} declares no basepoint", name, sec.line)
        return value

    def class_spec(self, name):
        self._lookup(name, ('class',), 'class')
        return self.classes[name]

    def ext_class(self, name, cfg=None, budget=None, max_cores=None, functor_budget=None):
        """Materialize a declared class.

        ``cfg`` falls back to the class's own ``cfg``, then to the
        ``[config]`` section, then to the strict constraint set.
        """
        from ..category_order.ext_class import ExtClass
        from ..constructions.classes import build_class

        spec = self.class_spec(name)
        if cfg is None:
            cfg = spec.cfg if spec.cfg is not None else self.config.get('cfg')
        cfg = interpret_constraints(cfg)
        budget = budget or self.config.get('budget', DEFAULT_BUDGET)
        max_cores = max_cores or self.config.get('max_cores', 'none')
        key = (name, cfg, budget, max_cores)
        if key not in self._built:
            ctx = self.context(spec.context)
            if spec.build is not None:
                functionals = None
                if spec.functionals:
                    functionals = [self.functional(f) for f in spec.functionals]
                palette = spec.palette or self.config.get('palette')
                cl = build_class(ctx, spec.build, functionals, palette, cfg, budget,
                                 max_cores, name=name)
            else:
                members = [self.extension(m) for m in spec.members]
                cl = ExtClass(ctx, members, cfg, budget, max_cores, name=name)
            self._built[key] = cl
        return self._built[key]

    def theorem(self, statement):
        if statement not in self.theorems:
            raise ResolutionError(f"no theorem {statement} declared", statement)
        return self.theorems[statement]

    # -- resolution ----------------------------------------------------

    def _check_keys(self, sec):
        allowed = SECTION_KINDS[sec.kind]
        for key, _, line in sec.items:
            if key in allowed or any(a.endswith('.') and key.startswith(a) for a in allowed):
                continue
            raise ParseError(f"unknown key {key!r} in {sec.kind} section", line)

    def _get(self, sec, key, default=None, required=True):
        for k, v, _ in sec.items:
            if k == key:
                return v
        if required and default is None:
            raise ResolutionError(f"{sec.kind} {sec.name or ''} lacks {key!r}".replace('  ', ' '),
                                  sec.name, sec.line)
        return default

    def _resolve(self, name):
        if name in self.objects:
            return self.objects[name]
        if name not in self.declarations:
            raise ResolutionError(f"undeclared name {name!r}", name)
        sec = self.declarations[name]
        if name in self._resolving:
            raise ResolutionError(f"circular reference through {name!r}", name, sec.line)
        self._resolving.add(name)
        try:
            obj = getattr(self, '_make_' + sec.kind)(sec)
        except (ResolutionError, ParseError):
            raise
        except ValueError as err:
            raise ResolutionError(f"{sec.kind} {name}: {err}", name, sec.line) from err
        finally:
            self._resolving.discard(name)
        self.objects[name] = obj
        return obj

    def _make_set(self, sec):
        elements = FinSet(split_list(self._get(sec, 'elements', '', required=False)))
        base = self._get(sec, 'basepoint', required=False)
        if base and base not in elements:
            raise ResolutionError(f"basepoint {base!r} of {sec.name} is not an element",
                                  sec.name, sec.line)
        return elements

    def _make_subset(self, sec):
        parent = self.finset(self._get(sec, 'of'))
        return parent.subset(split_list(self._get(sec, 'elements', '', required=False)))

    def _make_group(self, sec):
        elements = FinSet(split_list(self._get(sec, 'elements')))
        rows = {g: split_list(self._get(sec, f"row.{g}")) for g in elements}
        return FinGroup.from_rows(elements, rows, self._get(sec, 'identity'))

    def _make_permgroup(self, sec):
        carrier = self.finset(self._get(sec, 'carrier'))
        generators = [parse_cycles(text, carrier)
                      for text in split_list(self._get(sec, 'generators', '', required=False))]
        group, perms = FinGroup.from_permutations(carrier, generators)
        return group, GroupAction.from_permutations(group, carrier, perms)

    def _make_action(self, sec):
        group_name = self._get(sec, 'group')
        group = self.group(group_name)
        carrier = self.finset(self._get(sec, 'carrier'))
        if self._get(sec, 'natural', 'no', required=False) == 'yes':
            if self.kinds.get(group_name) != 'permgroup':
                raise ResolutionError("natural actions need a permgroup", sec.name, sec.line)
            source = self.action(group_name)
            perms = {g: {x: source(g, x) for x in source.carrier if x in carrier}
                     for g in group}
            return GroupAction.from_permutations(group, carrier, perms)
        perms = {}
        for key, value, _ in sec.items:
            if key.startswith('act.'):
                g = key[len('act.'):]
                if g not in group.elements:
                    raise ResolutionError(f"{g!r} is not an element of {group_name}",
                                          sec.name, sec.line)
                perms[g] = parse_cycles(value, carrier)
        return GroupAction.from_permutations(group, carrier, perms)

    def _make_hom(self, sec):
        return GroupHom(self.group(self._get(sec, 'source')), self.group(self._get(sec, 'target')),
                        split_pairs(self._get(sec, 'table', '', required=False), sec.line))

    def _make_map(self, sec):
        return FinMap(self.finset(self._get(sec, 'domain')), self.finset(self._get(sec, 'codomain')),
                      split_pairs(self._get(sec, 'table', '', required=False), sec.line))

    def _make_functional(self, sec):
        return RatFn(self.finset(self._get(sec, 'on')),
                     split_pairs(self._get(sec, 'values', '', required=False), sec.line))

    def _make_context(self, sec):
        omega_name, conn_name = self._get(sec, 'omega'), self._get(sec, 'conn')
        omega, conn = self.finset(omega_name), self.finset(conn_name)
        embedding = self._get(sec, 'embedding', required=False)
        return ExtensionContext(
            omega, self.basepoint(omega_name), self.action(self._get(sec, 'gau_hat')),
            self.finset(self._get(sec, 'conn_hat')), conn, self.basepoint(conn_name),
            self.action(self._get(sec, 'gau')), self.hom(self._get(sec, 'xi')),
            self.functional(self._get(sec, 'base_s')),
            self.finmap(embedding) if embedding else None, name=sec.name)

    def _make_extension(self, sec):
        ctx = self.context(self._get(sec, 'context'))
        x = FinSet(split_list(self._get(sec, 'x')))
        c1 = FinSet(split_list(self._get(sec, 'c1')))
        return Extension(
            x, RatFn(x, split_pairs(self._get(sec, 's_hat'), sec.line)),
            c1, RatFn(c1, split_pairs(self._get(sec, 'c_fn'), sec.line)),
            FinMap(c1, ctx.conn, split_pairs(self._get(sec, 'delta'), sec.line)),
            label=sec.name)

    def _make_class(self, sec):
        context = self._get(sec, 'context')
        self.context(context)
        members = split_list(self._get(sec, 'members', '', required=False))
        build = self._get(sec, 'build', required=False)
        if bool(members) == bool(build):
            raise ResolutionError(f"class {sec.name} needs exactly one of 'members' or 'build'",
                                  sec.name, sec.line)
        for m in members:
            self.extension(m)
        functionals = split_list(self._get(sec, 'functionals', '', required=False))
        for f in functionals:
            self.functional(f)
        palette = split_list(self._get(sec, 'palette', '', required=False)) or None
        cfg = self._get(sec, 'cfg', required=False)
        spec = ClassSpec(sec.name, context, members, build, functionals, palette,
                         interpret_constraints(cfg) if cfg else None)
        self.classes[sec.name] = spec
        return spec

    def _config(self, sec):
        values = {key: value for key, value, _ in sec.items}
        config = {}
        try:
            if 'cfg' in values:
                config['cfg'] = interpret_constraints(values['cfg'])
            for key in ('budget', 'seed'):
                if key in values:
                    config[key] = int(values[key])
        except ValueError as err:
            raise ResolutionError(f"bad config value: {err}", 'config', sec.line) from err
        if 'palette' in values:
            config['palette'] = split_list(values['palette'])
        if 'max_cores' in values:
            config['max_cores'] = values['max_cores']
        return config


def _encode(value):
    if isinstance(value, (list, tuple)):
        return ', '.join(_encode(v) for v in value)
    if isinstance(value, dict):
        return ', '.join(f"{k}:{_encode(v)}" for k, v in value.items())
    if isinstance(value, FinSet):
        return ', '.join(value)
    if isinstance(value, (FinMap, RatFn)):
        return _encode(dict(value.items()))
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, str):
        return value
    return format_rational(value)


class InstanceBuilder:
    """Assemble instance sections programmatically.

    >>> b = InstanceBuilder()
    >>> _ = b.add('set', 'omega', elements=['w0', 'a'], basepoint='w0')
    >>> print(b.text().strip())
    [set omega]
    elements = w0, a
    basepoint = w0
    """

    def __init__(self):
        self.sections = []

    def add(self, kind, name=None, items=None, **bindings):
        """Append a section; ``items`` carries keys that are not identifiers."""
        pairs = list((items or {}).items()) + list(bindings.items())
        encoded = tuple((key, normalize_value(_encode(value)), None)
                        for key, value in pairs if value is not None)
        self.sections.append(Section(kind, name, encoded, None))
        return name

    def add_group_rows(self, name, group):
        rows = {f"row.{g}": [group.op(g, h) for h in group] for g in group}
        return self.add('group', name, rows, elements=group.elements, identity=group.identity)

    def add_extension(self, name, context, e):
        return self.add('extension', name, context=context, x=e.x, s_hat=e.s_hat, c1=e.c1,
                        c_fn=e.c_fn, delta=e.delta)

    def text(self):
        return serialize_instance(self)

    def build(self, source=None):
        """Resolve the sections into an `InstanceFile`."""
        return parse_instance_text(self.text(), source=source)
