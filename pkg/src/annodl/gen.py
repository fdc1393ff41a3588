"""Seeded random theories for property tests, plus shrinking."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable, Iterator, Sequence

from .theory import BodyExpr, Literal, Rule, RuleKind, Tag, Theory

ANNOTATION_MODES = ("none", "tags_only", "tags_and_fail")
FAIL_PROBABILITY = 0.15
ALL_TAGS: tuple[Tag, ...] = (Tag.PA, Tag.PAS, Tag.DE, Tag.DES, Tag.FREE)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    atoms: int = 6
    rules: int = 10
    max_body: int = 2
    sup_pairs: int = 4
    annotation_mode: str = "none"
    fact_probability: float = 0.2
    strict_ratio: float = 0.1
    defeater_ratio: float = 0.1
    # annotation pool for tags_only / tags_and_fail; None means all five tags
    tags: tuple[Tag, ...] | None = None

    def __post_init__(self) -> None:
        for name in ("atoms", "rules", "max_body", "sup_pairs"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        for name in ("fact_probability", "strict_ratio", "defeater_ratio"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.annotation_mode not in ANNOTATION_MODES:
            raise ValueError(f"annotation_mode must be one of {ANNOTATION_MODES}")
        if self.atoms == 0 and self.rules > 0:
            raise ValueError("rules need at least one atom")


def generate(c: GenConfig) -> Theory:
    """A valid theory, fully determined by ``c``.

    Superiority pairs only join rules with complementary heads and are
    oriented along a random total order of the rules, so they are acyclic.
    """
    rng = random.Random(c.seed)
    atoms = [f"a{i}" for i in range(c.atoms)]

    def lit() -> Literal:
        return Literal(rng.choice(atoms), rng.random() < 0.5)

    facts = set()
    for a in atoms:
        if rng.random() < c.fact_probability:
            facts.add(Literal(a, rng.random() < 0.5))

    pool = c.tags or ALL_TAGS
    rules = []
    for i in range(c.rules):
        x = rng.random()
        if x < c.strict_ratio:
            kind = RuleKind.STRICT
        elif x < c.strict_ratio + c.defeater_ratio:
            kind = RuleKind.DEFEATER
        else:
            kind = RuleKind.DEFEASIBLE
        body = []
        for _ in range(rng.randint(0, c.max_body)):
            q = lit()
            tag, failed = Tag.FREE, False
            if kind is not RuleKind.STRICT and c.annotation_mode != "none":
                tag = rng.choice(pool)
                failed = c.annotation_mode == "tags_and_fail" and rng.random() < FAIL_PROBABILITY
            body.append(BodyExpr(q, tag, failed))
        rules.append(Rule(f"r{i}", kind, lit(), tuple(body)))

    rank = list(range(len(rules)))
    rng.shuffle(rank)
    by_head: dict[Literal, list[int]] = {}
    for i, r in enumerate(rules):
        by_head.setdefault(r.head, []).append(i)
    candidates = sorted(
        (i, j)
        for q, idx in by_head.items()
        if q.positive
        for i in idx
        for j in by_head.get(q.complement(), ())
    )
    rng.shuffle(candidates)
    sup = set()
    for i, j in candidates[: c.sup_pairs]:
        hi, lo = (i, j) if rank[i] > rank[j] else (j, i)
        sup.add((rules[hi].label, rules[lo].label))
    return Theory(frozenset(facts), tuple(rules), frozenset(sup))


def sized_config(size: int, seed: int = 0, annotation_mode: str = "tags_and_fail") -> GenConfig:
    """A configuration whose theories have roughly ``size`` symbols."""
    # about 5.5 symbols per rule at max_body=3 with annotations
    rules = max(1, round(size / 5.5))
    atoms = max(2, rules // 2)
    return GenConfig(
        seed=seed,
        atoms=atoms,
        rules=rules,
        max_body=3,
        sup_pairs=max(1, rules // 4),
        annotation_mode=annotation_mode,
        fact_probability=0.1,
    )


def shrink(t: Theory) -> Iterator[Theory]:
    """Candidates with strictly fewer symbols, each still valid."""
    for pair in sorted(t.sup):
        yield replace(t, sup=t.sup - {pair})
    for q in sorted(t.facts):
        yield replace(t, facts=t.facts - {q})
    for i, r in enumerate(t.rules):
        rules = t.rules[:i] + t.rules[i + 1:]
        sup = frozenset(p for p in t.sup if r.label not in p)
        yield Theory(t.facts, rules, sup)
    for i, r in enumerate(t.rules):
        for j, e in enumerate(r.body):
            yield _with_body(t, i, r.body[:j] + r.body[j + 1:])
            if e.failed:
                yield _with_body(t, i, r.body[:j] + (BodyExpr(e.literal, e.tag),) + r.body[j + 1:])
            if e.tag is not Tag.FREE:
                yield _with_body(t, i, r.body[:j] + (BodyExpr(e.literal, Tag.FREE, e.failed),) + r.body[j + 1:])


def _with_body(t: Theory, i: int, body: Sequence[BodyExpr]) -> Theory:
    r = t.rules[i]
    rules = t.rules[:i] + (Rule(r.label, r.kind, r.head, tuple(body)),) + t.rules[i + 1:]
    return Theory(t.facts, rules, t.sup)


def minimize(t: Theory, failing: Callable[[Theory], bool], max_steps: int = 10_000) -> Theory:
    """Greedy shrink: keep the first smaller candidate on which ``failing`` still holds."""
    for _ in range(max_steps):
        for cand in shrink(t):
            if failing(cand):
                t = cand
                break
        else:
            return t
    return t


def is_locally_minimal(t: Theory, failing: Callable[[Theory], bool]) -> bool:
    return failing(t) and not any(failing(c) for c in shrink(t))

