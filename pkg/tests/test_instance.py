"""
Unit tests for parsing, resolving and writing instance files.
"""
import pytest

from ymext.constraints import LAX, STRICT
from ymext.errors import ParseError, ResolutionError
from ymext.harness.instance import (InstanceBuilder, parse_instance, parse_instance_text,
                                    serialize_instance)

from .helpers import MINIMAL_INSTANCE, TOY_INSTANCE


def _line_of(text, header):
    return text.splitlines().index(header) + 1


def test_minimal_instance_resolves():
    inst = parse_instance_text(MINIMAL_INSTANCE)
    ctx = inst.context('ctx')
    assert list(ctx.omega) == ['w0']
    assert len(ctx.conn_hat) == 0
    assert inst.basepoint('conn') == 'd0'


def test_round_trip(tmp_path):
    inst = parse_instance_text(TOY_INSTANCE)
    text = serialize_instance(inst)
    again = parse_instance_text(text)
    assert again == inst
    assert again.text() == text
    assert again.digest() == inst.digest()

    path = tmp_path / 'toy.inst'
    path.write_text(TOY_INSTANCE)
    from_file = parse_instance(path)
    assert from_file == inst
    assert from_file.source == str(path)


def test_comments_and_spacing_do_not_change_the_digest():
    spaced = TOY_INSTANCE.replace('values = w0:0, h1:1, a:2, b:3',
                                  'values = w0 : 0 ,h1:1,  a:2, b:3   # the functional')
    assert parse_instance_text(spaced).digest() == parse_instance_text(TOY_INSTANCE).digest()


def test_lookups():
    inst = parse_instance_text(TOY_INSTANCE)
    assert inst.names('extension') == ['e_core', 'e_a', 'e_b', 'e_ab', 'bad']
    e = inst.extension('e_a')
    assert e.label == 'e_a'
    assert list(e.x) == ['w0', 'h1', 'a']
    assert inst.extension_context('e_a') is inst.context('ctx')
    assert inst.theorem('A').bindings['pairs'] == 'chain:chain, antichain:antichain'
    with pytest.raises(ResolutionError):
        inst.theorem('B')
    with pytest.raises(ResolutionError, match='not a functional'):
        inst.functional('omega')


def test_class_constraint_precedence():
    text = TOY_INSTANCE.replace('[class antichain]\ncontext = ctx\n',
                                '[class antichain]\ncontext = ctx\ncfg = lax\n')
    inst = parse_instance_text(text)
    assert inst.ext_class('chain').cfg == STRICT
    assert inst.ext_class('antichain').cfg == LAX
    assert inst.ext_class('antichain', cfg='strict').cfg == STRICT
    assert inst.ext_class('chain') is inst.ext_class('chain')

    relaxed = parse_instance_text(TOY_INSTANCE.replace('cfg = strict', 'cfg = none'))
    assert relaxed.ext_class('chain').cfg == 0


def test_base_functional_must_vanish():
    text = MINIMAL_INSTANCE.replace('values = d0:0', 'values = d0:1')
    with pytest.raises(ResolutionError, match='base_s does not vanish') as err:
        parse_instance_text(text)
    assert err.value.name == 'ctx'
    assert err.value.line == _line_of(text, '[context ctx]')


@pytest.mark.parametrize('text, line, column', [
    ('[set omega\nelements = w0\n', 1, 1),
    ('elements = w0\n', 1, 1),
    ('[set omega]\nelements = w0\nelements = a\n', 3, 1),
    ('  [widget w]\n', 1, 4),
    ('[set a]\n[set a]\n', 2, 6),
    ('[set omega]\n  what\n', 2, 3),
])
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_instance_text(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_unknown_key():
    with pytest.raises(ParseError, match="unknown key 'colour'") as err:
        parse_instance_text('[set omega]\nelements = w0\ncolour = red\n')
    assert err.value.line == 3


@pytest.mark.parametrize('text, message', [
    (MINIMAL_INSTANCE.replace('of = omega', 'of = nowhere'), "undeclared set 'nowhere'"),
    ('[subset x]\nof = x\n', 'circular reference'),
    ('[theorem Z]\npairs = a:b\n', "unknown theorem 'Z'"),
    (MINIMAL_INSTANCE + '\n[class c]\ncontext = ctx\n', "exactly one of"),
    ('[set omega]\nelements = w0\nbasepoint = q\n', 'basepoint'),
    ('[config]\nbudget = lots\n', 'bad config value'),
])
def test_resolution_errors(text, message):
    with pytest.raises(ResolutionError, match=message):
        parse_instance_text(text)


def test_many_declarations_round_trip():
    builder = InstanceBuilder()
    for k in range(200):
        builder.add('set', f"s{k}", elements=['p', 'q'], basepoint='p')
    inst = builder.build()
    assert len(inst.names('set')) == 200
    assert parse_instance_text(inst.text()) == inst


def test_builder_encodes_extensions():
    inst = parse_instance_text(TOY_INSTANCE)
    builder = InstanceBuilder()
    builder.sections = list(inst.sections)
    builder.add_extension('copy', 'ctx', inst.extension('e_ab'))
    builder.add_group_rows('triv_copy', inst.group('triv'))
    built = builder.build()
    assert built.extension('copy') == inst.extension('e_ab')
    assert built.group('triv_copy') == inst.group('triv')
