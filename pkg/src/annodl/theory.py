"""Abstract syntax for annotated defeasible theories.

A theory is a set of facts, a list of labelled rules and an acyclic
superiority relation over rule labels.  Every body occurrence carries a
tag (one of the four proof tags or ``FREE``) and may be wrapped in a
fail-expression.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field
from typing import Iterable


class Tag(enum.Enum):
    PA = "pa"
    PAS = "pa*"
    DE = "de"
    DES = "de*"
    FREE = "free"

    @property
    def is_proof_tag(self) -> bool:
        return self is not Tag.FREE

    @property
    def is_team(self) -> bool:
        return self in (Tag.PA, Tag.DE)

    @property
    def is_indiv(self) -> bool:
        return self in (Tag.PAS, Tag.DES)

    @property
    def is_blocking(self) -> bool:
        return self in (Tag.PA, Tag.PAS)

    @property
    def is_propagating(self) -> bool:
        return self in (Tag.DE, Tag.DES)

    def __str__(self) -> str:
        return self.value


PROOF_TAGS: tuple[Tag, ...] = (Tag.PA, Tag.PAS, Tag.DE, Tag.DES)


@dataclass(frozen=True, order=True, slots=True)
class Literal:
    atom: str
    positive: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "atom", sys.intern(self.atom))

    def complement(self) -> Literal:
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return self.atom if self.positive else "~" + self.atom


def complement(q: Literal) -> Literal:
    return q.complement()


@dataclass(frozen=True, slots=True)
class BodyExpr:
    literal: Literal
    tag: Tag = Tag.FREE
    failed: bool = False

    @property
    def annotated(self) -> bool:
        return self.failed or self.tag is not Tag.FREE


class RuleKind(enum.Enum):
    STRICT = "->"
    DEFEASIBLE = "=>"
    DEFEATER = "~>"

    @property
    def supportive(self) -> bool:
        return self is not RuleKind.DEFEATER


@dataclass(frozen=True, slots=True)
class Rule:
    label: str
    kind: RuleKind
    head: Literal
    body: tuple[BodyExpr, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "label", sys.intern(self.label))
        object.__setattr__(self, "body", tuple(self.body))

    @property
    def supportive(self) -> bool:
        return self.kind.supportive


@dataclass(frozen=True)
class Theory:
    facts: frozenset[Literal] = frozenset()
    rules: tuple[Rule, ...] = ()
    sup: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "facts", frozenset(self.facts))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "sup", frozenset(self.sup))

    def rule(self, label: str) -> Rule:
        for r in self.rules:
            if r.label == label:
                return r
        raise KeyError(label)

    @property
    def labels(self) -> list[str]:
        return [r.label for r in self.rules]


class AnnotatedInputError(ValueError):
    """Raised when an operation defined only for plain theories sees tags or fail."""


@dataclass(frozen=True)
class Violation:
    category: str
    message: str
    location: tuple[str, ...] = field(default=())

    def __str__(self) -> str:
        return f"{self.category}: {self.message}"


def _find_cycle(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> list[str] | None:
    succ: dict[str, list[str]] = {}
    for a, b in sorted(edges):
        succ.setdefault(a, []).append(b)
    colour: dict[str, int] = {}
    for start in sorted(set(nodes) | set(succ)):
        if colour.get(start):
            continue
        # iterative DFS; path holds the grey chain
        path = [start]
        iters = [iter(succ.get(start, ()))]
        colour[start] = 1
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                colour[path.pop()] = 2
                iters.pop()
                continue
            c = colour.get(nxt, 0)
            if c == 1:
                return path[path.index(nxt):] + [nxt]
            if c == 0:
                colour[nxt] = 1
                path.append(nxt)
                iters.append(iter(succ.get(nxt, ())))
    return None


def validate(t: Theory) -> list[Violation]:
    """Return the well-formedness violations of ``t`` (empty when valid)."""
    out: list[Violation] = []
    seen: set[str] = set()
    for r in t.rules:
        if r.label in seen:
            out.append(Violation("DuplicateLabel", f"label {r.label} is used by more than one rule", (r.label,)))
        seen.add(r.label)
        if r.kind is RuleKind.STRICT:
            for e in r.body:
                if e.annotated:
                    out.append(Violation(
                        "AnnotatedStrictRule",
                        f"strict rule {r.label} has an annotated or failed body literal {e.literal}",
                        (r.label,),
                    ))
                    break
    for a, b in sorted(t.sup):
        for x in (a, b):
            if x not in seen:
                out.append(Violation("UnknownLabel", f"superiority {a} > {b} names unknown rule {x}", (a, b)))
    cycle = _find_cycle(seen, t.sup)
    if cycle is not None:
        out.append(Violation(
            "CyclicSuperiority",
            "superiority relation has a cycle: " + " > ".join(cycle),
            tuple(cycle),
        ))
    return out


def literals_of(t: Theory) -> frozenset[Literal]:
    """Every literal mentioned in ``t``, closed under complement."""
    lits: set[Literal] = set(t.facts)
    for r in t.rules:
        lits.add(r.head)
        lits.update(e.literal for e in r.body)
    lits |= {q.complement() for q in lits}
    return frozenset(lits)


def is_annotated(t: Theory) -> bool:
    return any(e.annotated for r in t.rules for e in r.body)


def require_unannotated(t: Theory) -> None:
    for r in t.rules:
        for e in r.body:
            if e.annotated:
                raise AnnotatedInputError(
                    f"rule {r.label} carries an annotation or fail-expression on {e.literal}"
                )


def strip_annotations(t: Theory) -> Theory:
    """The underlying theory: every tag replaced by FREE.

    Fail-expressions cannot be stripped meaningfully and raise
    :class:`AnnotatedInputError`.
    """
    rules = []
    for r in t.rules:
        if any(e.failed for e in r.body):
            raise AnnotatedInputError(f"rule {r.label} contains a fail-expression")
        rules.append(Rule(r.label, r.kind, r.head, tuple(BodyExpr(e.literal) for e in r.body)))
    return Theory(t.facts, tuple(rules), t.sup)


def symbol_count(t: Theory) -> int:
    """Size |D| of a theory: literals, labels, tags and fail keywords."""
    n = len(t.facts) + 2 * len(t.sup)
    for r in t.rules:
        n += 2
        for e in r.body:
            n += 1 + (e.tag is not Tag.FREE) + e.failed
    return n
