import json
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from annodl import FIXTURES, load_fixture, parse_theory
from annodl.conclusions import (
    ConclusionSet,
    ConclusionTag,
    UnknownLiteralWarning,
    Verdict,
    check_inclusions,
    compare_semantics,
    incoherent_pairs,
    query,
    solve,
)
from annodl.gen import GenConfig, generate
from annodl.syntax import parse_body_expr
from annodl.theory import PROOF_TAGS, BodyExpr, Literal, Tag, literals_of

from expectations import FIXTURE_EXPECTATIONS, parse_expected


@pytest.mark.parametrize("key", sorted(FIXTURE_EXPECTATIONS))
def test_fixture_conclusions(key):
    name, expected = FIXTURE_EXPECTATIONS[key]
    cs = solve(load_fixture(name))
    missing = [e for e in expected if parse_expected(e) not in cs]
    assert missing == []


def test_team_defeat_square():
    cs = solve(load_fixture("team_defeat"))
    for e in ("+pa q", "-pa* q", "-pa* ~q"):
        assert parse_expected(e) in cs


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_satisfy_inclusions(name):
    cs = solve(load_fixture(name))
    assert check_inclusions(cs) == []
    assert incoherent_pairs(cs) == []


def test_every_pair_has_a_verdict():
    t = load_fixture("guilty")
    cs = solve(t)
    assert len(cs.verdicts) == len(literals_of(t)) * len(ConclusionTag)


def test_empty_theory():
    cs = solve(parse_theory(""))
    assert list(cs) == []
    assert cs.to_json() == "[]"


def test_json_schema_and_order():
    cs = solve(load_fixture("guilty"))
    rows = json.loads(cs.to_json())
    assert set(rows[0]) == {"literal", "tag", "verdict"}
    keys = [(r["literal"], [t.value for t in ConclusionTag].index(r["tag"])) for r in rows]
    assert keys == sorted(keys)
    assert all(r["verdict"] in "+-" for r in rows)
    assert len(json.loads(cs.to_json(undecided=True))) == len(cs.verdicts)


def test_query_examples():
    comp = load_fixture("compensation")
    assert query(comp, Tag.PA, parse_body_expr("[de] ~guilty")) is Verdict.REFUTED
    guilty = load_fixture("guilty")
    assert query(guilty, Tag.PA, parse_body_expr("free ~guilty")) is Verdict.PROVED
    assert query(guilty, Tag.DE, parse_body_expr("~guilty")) is Verdict.REFUTED
    assert query(guilty, Tag.PA, parse_body_expr("[pa] ~guilty"), mode="supported") is Verdict.PROVED


def test_query_unknown_literal_warns():
    t = load_fixture("guilty")
    with pytest.warns(UnknownLiteralWarning):
        assert query(t, Tag.PA, parse_body_expr("fail [pa] zzz")) is Verdict.PROVED
    with pytest.warns(UnknownLiteralWarning):
        assert query(t, Tag.PA, parse_body_expr("zzz")) is Verdict.REFUTED


def test_query_rejects_free_context():
    with pytest.raises(ValueError):
        query(load_fixture("guilty"), Tag.FREE, parse_body_expr("guilty"))


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1), st.sampled_from(PROOF_TAGS), st.sampled_from(list(Tag)))
def test_fail_inverts_query(seed, ctx, tag):
    t = generate(GenConfig(seed=seed, annotation_mode="tags_and_fail"))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnknownLiteralWarning)
        for q in sorted(literals_of(t))[:4]:
            for mode in ("defeasibly", "supported"):
                plain = query(t, ctx, BodyExpr(q, tag), mode)
                failed = query(t, ctx, BodyExpr(q, tag, True), mode)
                assert failed is plain.inverted()


def test_query_free_matches_conclusion_set():
    t = load_fixture("support_gaps")
    cs = solve(t)
    for q in literals_of(t):
        for d in PROOF_TAGS:
            assert query(t, d, BodyExpr(q)) is cs.verdict(ConclusionTag.defeasible(d), q)
            assert query(t, d, BodyExpr(q), "supported") is cs.verdict(ConclusionTag.sigma(d), q)


def test_inclusion_detector_self_test():
    p = Literal("p")
    cs = ConclusionSet((p,), {(ConclusionTag.DE, p): Verdict.PROVED, (ConclusionTag.PA, p): Verdict.UNDECIDED})
    (v,) = [v for v in check_inclusions(cs) if v.smaller is ConclusionTag.DE]
    assert v.chain == "a" and v.literal == p and v.larger is ConclusionTag.PA
    assert "chain (a)" in str(v)


def test_inclusion_detector_negative_chain():
    p = Literal("p")
    cs = ConclusionSet((p,), {(ConclusionTag.PAS, p): Verdict.REFUTED})
    (v,) = check_inclusions(cs)
    assert (v.chain, v.sign, v.larger) == ("f", "-", ConclusionTag.DES)


def test_fail_free_annotations_satisfy_inclusions():
    for seed in range(150):
        t = generate(GenConfig(seed=seed, atoms=8, rules=16, sup_pairs=6, annotation_mode="tags_only"))
        assert check_inclusions(solve(t)) == [], seed


def test_fail_expression_breaks_support_chain():
    # ~a is ambiguous: refuted under pa, yet supported under sigma_pa,
    # so "fail ~a" holds defeasibly but not in the supported reading.
    t = parse_theory("r1: => ~a.\nr2: => a.\nr3: fail ~a => b.")
    cs = solve(t)
    b = Literal("b")
    assert cs.verdict(ConclusionTag.PA, b) is Verdict.PROVED
    assert cs.verdict(ConclusionTag.SIGMA_PA, b) is Verdict.REFUTED
    assert {v.chain for v in check_inclusions(cs)} >= {"a", "c"}


def test_compare_semantics_self_attack():
    r = compare_semantics(parse_theory("r1: ~p => p."))
    assert r.ok
    assert r.violations == [] and r.atom_violations == []


def test_compare_semantics_empty():
    r = compare_semantics(parse_theory(""))
    assert r.ok and r.wf_only == [] and list(r.kunen) == list(r.wellfounded) == []


def test_compare_semantics_positive_loop():
    # a positive loop is undecided in Kunen and refuted by the well-founded model
    r = compare_semantics(parse_theory("r1: p => p."))
    assert r.ok
    assert (ConclusionTag.PA, Literal("p"), Verdict.REFUTED) in r.wf_only


def test_wellfounded_solve_agrees_on_fixtures():
    for name in FIXTURES:
        t = load_fixture(name)
        k, w = solve(t, "kunen"), solve(t, "wf")
        for (tag, q), v in k.verdicts.items():
            if v is not Verdict.UNDECIDED:
                assert w.verdict(tag, q) is v
