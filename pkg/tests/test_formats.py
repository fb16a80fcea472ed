import pytest

from prvass.explorer import Bounds, bounded_cover, replay_trace
from prvass.models import (
    Action,
    Configuration,
    INC,
    MinskyAction,
    MinskyMachine,
    Prvass,
    pop,
    push,
    validate,
)
from prvass.formats import (
    ModelFile,
    ParseError,
    parse_minsky,
    parse_model_file,
    parse_prvass,
    parse_trace,
    render_trace,
    serialize_minsky,
    serialize_model_file,
    serialize_prvass,
    system_digest,
)
from prvass.reduction import compile_machine

from conftest import CORPUS_EXPECTED, corpus_path, load_machine

INC_DEC_TEXT = """minsky
states: s q t
init: s
final: t
s 0 inc q
q 0 dec t
"""


def test_parse_minsky_inc_dec():
    m = parse_minsky(INC_DEC_TEXT)
    assert m == MinskyMachine(
        ("s", "q", "t"),
        (MinskyAction("s", 0, "inc", "q"), MinskyAction("q", 0, "dec", "t")),
        "s",
        "t",
    )


def test_parse_minsky_bad_op_names_line():
    text = INC_DEC_TEXT.replace("q 0 dec t", "q 0 foo t")
    with pytest.raises(ParseError) as exc:
        parse_minsky(text)
    assert exc.value.line == 6
    assert "foo" in str(exc.value)


def test_parse_minsky_bad_counter_index():
    with pytest.raises(ParseError) as exc:
        parse_minsky(INC_DEC_TEXT.replace("s 0 inc q", "s 7 inc q"))
    assert "0 or 1" in str(exc.value)


def test_minsky_round_trip_is_identity_on_canonical_text():
    assert serialize_minsky(parse_minsky(INC_DEC_TEXT)) == INC_DEC_TEXT


def test_minsky_serialize_parse_canonicalizes_and_is_idempotent():
    messy = "# a comment\nminsky\n\nstates:   s q t\ninit: s\nfinal: t   # trailing\ns 0 inc q\nq 0 dec t\n"
    once = serialize_minsky(parse_minsky(messy))
    assert once == INC_DEC_TEXT
    assert serialize_minsky(parse_minsky(once)) == once


def test_corpus_files_are_canonical():
    for name in CORPUS_EXPECTED:
        text = corpus_path(name).read_text()
        assert serialize_minsky(parse_minsky(text)) == text, name


PRVASS_TEXT = """prvass
states: q1 q2
stack: a b
init: q1
q1 -> q2 : pop(a), inc, inc
q2 -> q2 :
"""


def test_parse_prvass_action_bodies():
    sys = parse_prvass(PRVASS_TEXT)
    assert sys == Prvass(
        ("q1", "q2"),
        ("a", "b"),
        (Action("q1", (pop("a"), INC, INC), "q2"), Action("q2", (), "q2")),
    )


def test_prvass_model_file_round_trip_keeps_init():
    mf = parse_model_file(PRVASS_TEXT)
    assert mf.kind == "prvass" and mf.init == "q1"
    assert serialize_model_file(mf) == PRVASS_TEXT


def test_parse_prvass_rejects_unknown_instruction():
    with pytest.raises(ParseError) as exc:
        parse_prvass(PRVASS_TEXT.replace("inc, inc", "inc, warp"))
    assert "warp" in str(exc.value)


def test_unknown_pop_symbol_is_a_validation_diagnostic_not_a_parse_error():
    sys = parse_prvass(PRVASS_TEXT.replace("pop(a)", "pop(zz)"))
    messages = [str(d) for d in validate(sys)]
    assert any("zz" in m for m in messages)


def test_parse_rejects_unknown_kind_and_empty_file():
    with pytest.raises(ParseError):
        parse_model_file("petri\n")
    with pytest.raises(ParseError):
        parse_model_file("   \n# only a comment\n")
    with pytest.raises(ParseError):
        parse_minsky(PRVASS_TEXT)
    with pytest.raises(ParseError):
        parse_prvass(INC_DEC_TEXT)


def test_compiled_system_round_trips():
    compiled = compile_machine(load_machine("inc-dec"))
    text = serialize_prvass(compiled.system, init=compiled.start)
    mf = parse_model_file(text)
    assert mf.system == compiled.system
    assert mf.init == compiled.start
    assert serialize_model_file(mf) == text


def test_model_file_docstring_kinds():
    assert ModelFile("minsky").machine is None
    with pytest.raises(ValueError):
        serialize_model_file(ModelFile("petri"))


def test_trace_render_and_parse_round_trip():
    compiled = compile_machine(load_machine("inc-dec"))
    text = serialize_prvass(compiled.system, init=compiled.start)
    verdict = bounded_cover(
        compiled.system,
        Configuration(compiled.start, (), 0),
        compiled.cover_target,
        Bounds(1_000_000, 64, 10_000, 1_000_000),
    )
    rendered = render_trace(verdict.trace, text)
    digest, loaded = parse_trace(rendered)
    assert digest == system_digest(text)
    assert loaded.start == verdict.trace.start
    assert [c for _, c in loaded.steps] == [c for _, c in verdict.trace.steps]
    # loaded traces carry no action references; replay still validates them
    assert replay_trace(compiled.system, loaded)


def test_trace_parse_rejects_missing_header():
    with pytest.raises(ParseError):
        parse_trace("s\t\t0\n")
    with pytest.raises(ParseError):
        parse_trace("# sha256: abc\ns\t\tnot-a-number\n")
