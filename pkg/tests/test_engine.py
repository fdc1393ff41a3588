import random

from hypothesis import given, settings, strategies as st

from annodl import load_fixture
from annodl.engine import (
    Interpretation,
    TruthValue,
    bottom,
    dominance_violations,
    fitting_step,
    kunen_fixpoint,
    naive_fixpoint,
    wellfounded_fixpoint,
)
from annodl.gen import GenConfig, generate
from annodl.metaprogram import GroundAtom, GroundProgram, defeasibly, ground
from annodl.theory import Literal, Tag

T, F, U = TruthValue.TRUE, TruthValue.FALSE, TruthValue.UNDEFINED


def atom(name):
    return GroundAtom("a", Literal(name))


def program(clauses, extra=()):
    """clauses: list of (head, [pos], [neg]) over atom names."""
    p = GroundProgram()
    for name in extra:
        p.atom_id(atom(name))
    for h, ps, ns in clauses:
        p.add(atom(h), [atom(x) for x in ps], [atom(x) for x in ns])
    return p


def val(i, name):
    return i.value(atom(name))


def test_fact_clause():
    p = program([("a", [], [])])
    assert val(fitting_step(p, bottom(p)), "a") is T


def test_self_negation_stays_undefined():
    p = program([("a", [], ["a"])])
    assert val(fitting_step(p, bottom(p)), "a") is U
    assert val(kunen_fixpoint(p), "a") is U
    assert val(wellfounded_fixpoint(p), "a") is U


def test_empty_definition_is_false():
    p = program([("a", ["b"], [])])
    i1 = fitting_step(p, bottom(p))
    assert val(i1, "b") is F and val(i1, "a") is U
    assert val(fitting_step(p, i1), "a") is F
    k = kunen_fixpoint(p)
    assert val(k, "a") is F and k.iterations == 2


def test_no_clauses():
    p = program([], extra=["a"])
    assert val(kunen_fixpoint(p), "a") is F


def test_even_loop_undefined_in_both():
    p = program([("a", [], ["b"]), ("b", [], ["a"])])
    for i in (kunen_fixpoint(p), wellfounded_fixpoint(p)):
        assert val(i, "a") is U and val(i, "b") is U


def test_positive_loop_false_only_wellfounded():
    p = program([("a", ["a"], [])])
    assert val(kunen_fixpoint(p), "a") is U
    assert val(wellfounded_fixpoint(p), "a") is F


def test_unknown_atom_is_false():
    p = program([("a", [], [])])
    assert kunen_fixpoint(p).value(atom("zzz")) is F


def test_inconsistent_interpretation_rejected():
    p = program([("a", [], [])])
    try:
        Interpretation(p, frozenset({0}), frozenset({0}))
    except ValueError:
        return
    raise AssertionError("expected ValueError")


def test_compensation_values():
    t = load_fixture("compensation")
    i = kunen_fixpoint(ground(t))
    c = Literal("compensation")
    assert i.value(defeasibly(Tag.PA, Tag.PA, c.complement())) is T
    assert i.value(defeasibly(Tag.PA, Tag.PA, c)) is F


def test_stable_example_values():
    i = kunen_fixpoint(ground(load_fixture("no_stable_model")))
    q = Literal("q")
    assert i.value(defeasibly(Tag.PA, Tag.PA, q)) is T
    assert i.value(defeasibly(Tag.PAS, Tag.PAS, q)) is F


modes = st.sampled_from(["none", "tags_only", "tags_and_fail"])


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1), modes)
def test_semi_naive_matches_naive(seed, mode):
    p = ground(generate(GenConfig(seed=seed, annotation_mode=mode)))
    k, n = kunen_fixpoint(p), naive_fixpoint(p)
    assert k.same_values(n)
    assert k.iterations == n.iterations


def test_trace_reports_each_stage():
    p = program([("a", [], []), ("b", ["a"], []), ("c", [], ["b"])])
    seen = []
    i = kunen_fixpoint(p, trace=lambda n, atoms: seen.append((n, atoms)))
    assert [n for n, _ in seen] == [1, 2, 3]
    assert val(i, "c") is F


def random_interpretation(p, rng):
    t, f = set(), set()
    for a in range(len(p.atoms)):
        x = rng.random()
        if x < 0.3:
            t.add(a)
        elif x < 0.6:
            f.add(a)
    return Interpretation(p, frozenset(t), frozenset(f))


def extend(i, rng):
    t, f = set(i.true), set(i.false)
    for a in range(len(i.program.atoms)):
        if a not in t and a not in f and rng.random() < 0.5:
            (t if rng.random() < 0.5 else f).add(a)
    return Interpretation(i.program, frozenset(t), frozenset(f))


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1), modes)
def test_fitting_step_is_monotone(seed, mode):
    rng = random.Random(seed)
    p = ground(generate(GenConfig(seed=seed, atoms=4, rules=6, annotation_mode=mode)))
    i = random_interpretation(p, rng)
    j = extend(i, rng)
    assert i.leq(j)
    assert fitting_step(p, i).leq(fitting_step(p, j))


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1), modes)
def test_kunen_below_wellfounded(seed, mode):
    p = ground(generate(GenConfig(seed=seed, annotation_mode=mode)))
    k, w = kunen_fixpoint(p), wellfounded_fixpoint(p)
    assert dominance_violations(k, w) == []
    assert fitting_step(p, k).same_values(k)


def test_wellfounded_is_fixpoint_of_fitting():
    p = ground(load_fixture("support_gaps"))
    w = wellfounded_fixpoint(p)
    assert fitting_step(p, w).same_values(w)
