"""Proof-theoretic inference rules for DL(∂), DL(δ), DL(∂*) and DL(δ*).

Conclusions are derived by saturating the inference rules over a growing
set of tagged literals.  Nothing here is shared with the meta-program
grounder or the fixpoint engine; only the theory data types are common.
The oracle covers plain theories only (no tags, no fail-expressions).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .theory import Literal, Rule, RuleKind, Tag, Theory, literals_of, require_unannotated

DELTA = "D"


class TaggedConclusion(NamedTuple):
    sign: str
    tag: str
    literal: Literal

    def __str__(self) -> str:
        return f"{self.sign}{self.tag} {self.literal}"


class IncoherentDerivation(AssertionError):
    pass


def sigma_name(d: Tag) -> str:
    return "sigma_" + d.value


class _State:
    """Derived conclusions; refuses to hold +x q together with -x q."""

    def __init__(self) -> None:
        self.facts: set[TaggedConclusion] = set()

    def has(self, sign: str, tag: str, q: Literal) -> bool:
        return TaggedConclusion(sign, tag, q) in self.facts

    def add(self, sign: str, tag: str, q: Literal) -> bool:
        c = TaggedConclusion(sign, tag, q)
        if c in self.facts:
            return False
        other = "-" if sign == "+" else "+"
        if TaggedConclusion(other, tag, q) in self.facts:
            raise IncoherentDerivation(f"derived both {c} and {other}{tag} {q}")
        self.facts.add(c)
        return True


class _Theory:
    def __init__(self, t: Theory):
        self.facts = t.facts
        self.sup = t.sup
        self.r_s: dict[Literal, list[Rule]] = {}
        self.r_sd: dict[Literal, list[Rule]] = {}
        self.r_all: dict[Literal, list[Rule]] = {}
        for r in t.rules:
            self.r_all.setdefault(r.head, []).append(r)
            if r.kind is not RuleKind.DEFEATER:
                self.r_sd.setdefault(r.head, []).append(r)
            if r.kind is RuleKind.STRICT:
                self.r_s.setdefault(r.head, []).append(r)

    def sd(self, q: Literal) -> list[Rule]:
        return self.r_sd.get(q, [])

    def attackers(self, q: Literal) -> list[Rule]:
        return self.r_all.get(q.complement(), [])

    def beats(self, a: Rule, b: Rule) -> bool:
        return (a.label, b.label) in self.sup


def _antecedent(r: Rule) -> list[Literal]:
    return [e.literal for e in r.body]


def _order(lits: Iterable[Literal], seed: int | None) -> list[Literal]:
    out = sorted(lits)
    if seed is not None:
        random.Random(seed).shuffle(out)
    return out


def _saturate_definite(th: _Theory, st: _State, lits: list[Literal]) -> None:
    changed = True
    while changed:
        changed = False
        for q in lits:
            strict = th.r_s.get(q, [])
            if not st.has("+", DELTA, q):
                if q in th.facts or any(all(st.has("+", DELTA, a) for a in _antecedent(r)) for r in strict):
                    changed |= st.add("+", DELTA, q)
            if not st.has("-", DELTA, q):
                if q not in th.facts and all(any(st.has("-", DELTA, a) for a in _antecedent(r)) for r in strict):
                    changed |= st.add("-", DELTA, q)


def derive_definite(t: Theory, order_seed: int | None = None) -> set[TaggedConclusion]:
    """Closure of the ±Δ rules (facts, strict rules, modus ponens)."""
    th = _Theory(t)
    st = _State()
    _saturate_definite(th, st, _order(literals_of(t), order_seed))
    return set(st.facts)


def derive(t: Theory, d: Tag, order_seed: int | None = None) -> set[TaggedConclusion]:
    """Deductive closure of DL(d) on a plain theory, including ±Δ.

    For the propagating tags the companion support tag (``sigma_de`` or
    ``sigma_de*``) is derived as well.  ``order_seed`` shuffles the order in
    which literals are visited; the result does not depend on it.
    """
    if not d.is_proof_tag:
        raise ValueError("derive needs a proof tag")
    require_unannotated(t)
    th = _Theory(t)
    st = _State()
    lits = _order(literals_of(t), order_seed)
    _saturate_definite(th, st, lits)

    tag = d.value
    sig = sigma_name(d) if d.is_propagating else None
    # the tag whose status decides whether an attacking rule's body holds
    att = sig if d.is_propagating else tag

    def all_plus(r: Rule, x: str) -> bool:
        return all(st.has("+", x, a) for a in _antecedent(r))

    def some_minus(r: Rule, x: str) -> bool:
        return any(st.has("-", x, a) for a in _antecedent(r))

    def plus_team(q: Literal) -> bool:
        if st.has("+", DELTA, q):
            return True
        if not (any(all_plus(r, tag) for r in th.sd(q)) and st.has("-", DELTA, q.complement())):
            return False
        return all(
            some_minus(s, att) or any(all_plus(u, tag) and th.beats(u, s) for u in th.sd(q))
            for s in th.attackers(q)
        )

    def minus_team(q: Literal) -> bool:
        if not st.has("-", DELTA, q):
            return False
        if all(some_minus(r, tag) for r in th.sd(q)) or st.has("+", DELTA, q.complement()):
            return True
        return any(
            all_plus(s, att) and all(some_minus(u, tag) or not th.beats(u, s) for u in th.sd(q))
            for s in th.attackers(q)
        )

    def plus_indiv(q: Literal) -> bool:
        if st.has("+", DELTA, q):
            return True
        if not st.has("-", DELTA, q.complement()):
            return False
        return any(
            all_plus(r, tag) and all(some_minus(s, att) or th.beats(r, s) for s in th.attackers(q))
            for r in th.sd(q)
        )

    def minus_indiv(q: Literal) -> bool:
        if not st.has("-", DELTA, q):
            return False
        return all(
            some_minus(r, tag)
            or st.has("+", DELTA, q.complement())
            or any(all_plus(s, att) and not th.beats(r, s) for s in th.attackers(q))
            for r in th.sd(q)
        )

    def plus_sigma(q: Literal) -> bool:
        if st.has("+", DELTA, q):
            return True
        return any(
            all_plus(r, sig) and all(some_minus(s, tag) or not th.beats(s, r) for s in th.attackers(q))
            for r in th.sd(q)
        )

    def minus_sigma(q: Literal) -> bool:
        if not st.has("-", DELTA, q):
            return False
        return all(
            some_minus(r, sig) or any(all_plus(s, tag) and th.beats(s, r) for s in th.attackers(q))
            for r in th.sd(q)
        )

    plus, minus = (plus_team, minus_team) if d.is_team else (plus_indiv, minus_indiv)
    rules = [("+", tag, plus), ("-", tag, minus)]
    if sig is not None:
        rules += [("+", sig, plus_sigma), ("-", sig, minus_sigma)]

    changed = True
    while changed:
        changed = False
        for q in lits:
            for sign, x, cond in rules:
                if not st.has(sign, x, q) and cond(q):
                    changed |= st.add(sign, x, q)
    return set(st.facts)


@dataclass(frozen=True)
class Mismatch:
    proof_tag: Tag
    tag: str
    literal: Literal
    oracle: str
    engine: str

    def __str__(self) -> str:
        return (f"DL({self.proof_tag.value}) {self.tag} {self.literal}: "
                f"oracle {self.oracle!r}, engine {self.engine!r}")


def _verdict(concl: set[TaggedConclusion], tag: str, q: Literal) -> str:
    if TaggedConclusion("+", tag, q) in concl:
        return "+"
    if TaggedConclusion("-", tag, q) in concl:
        return "-"
    return "?"


def crosscheck(t: Theory, engine_conclusions=None) -> list[Mismatch]:
    """Compare oracle and engine verdicts for ±Δ, ±d and (propagating d) ±σ_d.

    ``engine_conclusions`` may be a precomputed Kunen conclusion set for ``t``.
    """
    from .conclusions import ConclusionTag, solve

    require_unannotated(t)
    cs = engine_conclusions if engine_conclusions is not None else solve(t, "kunen")
    out: list[Mismatch] = []
    lits = sorted(literals_of(t), key=str)
    for d in (Tag.PA, Tag.DE, Tag.PAS, Tag.DES):
        concl = derive(t, d)
        tags = [(DELTA, ConclusionTag.DELTA), (d.value, ConclusionTag.defeasible(d))]
        if d.is_propagating:
            tags.append((sigma_name(d), ConclusionTag.sigma(d)))
        for q in lits:
            for otag, ctag in tags:
                ov, ev = _verdict(concl, otag, q), cs.verdict(ctag, q).value
                if ov != ev:
                    out.append(Mismatch(d, otag, q, ov, ev))
    return out
