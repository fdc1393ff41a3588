import pytest
from hypothesis import given, settings, strategies as st

from annodl import FIXTURES, load_fixture
from annodl.conclusions import Conclusion, ConclusionTag
from annodl.gen import GenConfig, generate
from annodl.syntax import (
    ErrorCategory,
    TheorySyntaxError,
    format_body_expr,
    parse_body_expr,
    parse_theory,
    print_conclusion,
    print_theory,
)
from annodl.theory import BodyExpr, Literal, RuleKind, Tag, Theory


def errors_of(text):
    with pytest.raises(TheorySyntaxError) as e:
        parse_theory(text, "t.adl")
    return e.value.errors


def test_annotated_rule():
    t = parse_theory("r5: [de] ~guilty => compensation.")
    (r,) = t.rules
    assert r.kind is RuleKind.DEFEASIBLE
    assert r.head == Literal("compensation")
    assert r.body == (BodyExpr(Literal("guilty", False), Tag.DE, False),)


def test_empty_text():
    assert parse_theory("") == Theory()
    assert parse_theory("  % only a comment\n") == Theory()


def test_fail_expression():
    (r,) = parse_theory("r1: fail [pa] p => q.").rules
    assert r.body == (BodyExpr(Literal("p"), Tag.PA, True),)


def test_all_statement_forms():
    t = parse_theory("fact a. fact ~b.\nr1: a, b -> c.\nr2: [pa*] c, fail d => ~e.\nr3: [de*] a ~> e.\nr2 > r3.")
    assert t.facts == {Literal("a"), Literal("b", False)}
    assert [r.kind for r in t.rules] == [RuleKind.STRICT, RuleKind.DEFEASIBLE, RuleKind.DEFEATER]
    assert t.rules[1].body[0].tag is Tag.PAS
    assert t.rules[1].body[1] == BodyExpr(Literal("d"), Tag.FREE, True)
    assert t.sup == {("r2", "r3")}


def test_strict_rule_annotations_rejected():
    (e,) = errors_of("r1: [pa] p -> q.")
    assert e.category is ErrorCategory.SYNTACTIC
    assert (e.span.line, e.span.column) == (1, 5)
    (e,) = errors_of("r1: fail p -> q.")
    assert e.category is ErrorCategory.SYNTACTIC


def test_error_spans_and_recovery():
    errs = errors_of("r1: => p.\nr2 => q.\nr3: => ~q.\nr4: ; => r.\n")
    assert [(e.span.line, e.span.column) for e in errs] == [(2, 4), (4, 5)]
    assert errs[0].span.file == "t.adl"
    assert errs[1].category is ErrorCategory.LEXICAL


def test_semantic_errors_have_spans():
    errs = errors_of("r1: => p.\nr1: => ~p.\nr1 > r2.\n")
    assert {e.category for e in errs} == {ErrorCategory.SEMANTIC}
    assert sorted(e.span.line for e in errs) == [2, 3]


def test_cycle_is_named():
    (e,) = errors_of("r1: => p.\nr2: => ~p.\nr1 > r2.\nr2 > r1.\n")
    assert "r1 > r2 > r1" in e.message


def test_reserved_words():
    errors_of("fact fail.")
    errors_of("fail: => p.")


def test_missing_terminator():
    (e,) = errors_of("r1: => p")
    assert e.span.line == 1


def test_body_expr_parsing():
    assert parse_body_expr("free ~guilty") == BodyExpr(Literal("guilty", False))
    assert parse_body_expr("[de] ~guilty") == BodyExpr(Literal("guilty", False), Tag.DE)
    assert parse_body_expr("de* p") == BodyExpr(Literal("p"), Tag.DES)
    assert parse_body_expr("fail [pa] zzz") == BodyExpr(Literal("zzz"), Tag.PA, True)
    # a tag word with nothing after it is an ordinary atom
    assert parse_body_expr("pa") == BodyExpr(Literal("pa"))
    for bad in ("", "fail", "[pa]", "[xx] p", "p q", "fail fail p"):
        with pytest.raises(TheorySyntaxError):
            parse_body_expr(bad)


def test_format_body_expr_round_trip():
    for text in ("p", "~p", "[pa] p", "fail [de*] ~q", "fail r"):
        e = parse_body_expr(text)
        assert format_body_expr(e) == text
        assert parse_body_expr(format_body_expr(e)) == e


def test_print_empty():
    assert print_theory(Theory()) == ""


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    t = load_fixture(name)
    assert parse_theory(print_theory(t)) == t


@settings(max_examples=1000)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["none", "tags_only", "tags_and_fail"]))
def test_round_trip_generated(seed, mode):
    t = generate(GenConfig(seed=seed, annotation_mode=mode, rules=8))
    text = print_theory(t)
    assert parse_theory(text) == t
    assert print_theory(parse_theory(text)) == text


def test_print_conclusion():
    assert print_conclusion(Conclusion("+", ConclusionTag.PA, Literal("compensation", False))) == "+pa ~compensation"
    assert print_conclusion(Conclusion("-", ConclusionTag.DELTA, Literal("p"))) == "-D p"
    assert print_conclusion(Conclusion("+", ConclusionTag.SIGMA_DE, Literal("s", False))) == "+sigma_de ~s"
