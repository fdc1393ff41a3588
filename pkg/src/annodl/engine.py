"""Three-valued evaluation of ground normal programs.

``kunen_fixpoint`` iterates Fitting's operator from the all-undefined
interpretation.  Each round decides exactly the atoms that one application
of the operator decides, so the reported iteration count is the stage at
which the least fixpoint is reached; only clauses touching atoms decided in
the previous round are revisited.

``wellfounded_fixpoint`` uses the alternating fixpoint over reducts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .metaprogram import GroundAtom, GroundProgram

TraceHook = Callable[[int, list[int]], None]


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "undefined"

    def leq(self, other: TruthValue) -> bool:
        """Information order: undefined below both classical values."""
        return self is TruthValue.UNDEFINED or self is other


@dataclass(frozen=True)
class Interpretation:
    program: GroundProgram
    true: frozenset[int] = frozenset()
    false: frozenset[int] = frozenset()
    iterations: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if self.true & self.false:
            raise ValueError("inconsistent interpretation")

    def value_of(self, i: int) -> TruthValue:
        if i in self.true:
            return TruthValue.TRUE
        if i in self.false:
            return TruthValue.FALSE
        return TruthValue.UNDEFINED

    def value(self, atom: GroundAtom) -> TruthValue:
        """Truth value of ``atom``; atoms outside the universe are false."""
        i = self.program.index.get(atom)
        if i is None:
            return TruthValue.FALSE
        return self.value_of(i)

    def leq(self, other: Interpretation) -> bool:
        return self.true <= other.true and self.false <= other.false

    def same_values(self, other: Interpretation) -> bool:
        return self.true == other.true and self.false == other.false


def bottom(p: GroundProgram) -> Interpretation:
    return Interpretation(p)


def _clauses_by_head(p: GroundProgram) -> list[list[int]]:
    by_head: list[list[int]] = [[] for _ in p.atoms]
    for c, h in enumerate(p.heads):
        by_head[h].append(c)
    return by_head


def fitting_step(p: GroundProgram, i: Interpretation) -> Interpretation:
    """One application of Fitting's operator (naive, clause by clause)."""
    T, F = i.true, i.false
    by_head = _clauses_by_head(p)
    new_t, new_f = set(), set()
    for a, cls in enumerate(by_head):
        fired = False
        blocked = 0
        for c in cls:
            pos, neg = p.pos[c], p.neg[c]
            if all(x in T for x in pos) and all(x in F for x in neg):
                fired = True
                break
            if any(x in F for x in pos) or any(x in T for x in neg):
                blocked += 1
        if fired:
            new_t.add(a)
        elif blocked == len(cls):
            new_f.add(a)
    return Interpretation(p, frozenset(new_t), frozenset(new_f))


def naive_fixpoint(p: GroundProgram) -> Interpretation:
    """Reference iteration of :func:`fitting_step` until nothing changes."""
    i = bottom(p)
    n = 0
    while True:
        j = fitting_step(p, i)
        if j.same_values(i):
            return Interpretation(p, i.true, i.false, n)
        i = j
        n += 1


class _Occurrences:
    """Per-atom lists of clauses in which the atom occurs positively / negatively."""

    def __init__(self, p: GroundProgram):
        n = len(p.atoms)
        self.pos: list[list[int]] = [[] for _ in range(n)]
        self.neg: list[list[int]] = [[] for _ in range(n)]
        for c, (ps, ns) in enumerate(zip(p.pos, p.neg)):
            for a in ps:
                self.pos[a].append(c)
            for a in ns:
                self.neg[a].append(c)


def kunen_fixpoint(p: GroundProgram, trace: Optional[TraceHook] = None) -> Interpretation:
    """Least fixpoint of Fitting's operator, which is the Kunen semantics here."""
    n_atoms = len(p.atoms)
    heads = p.heads
    occ = _Occurrences(p)
    # pending[c]: body literals of c not yet satisfied; c fires at 0
    pending = [len(ps) + len(ns) for ps, ns in zip(p.pos, p.neg)]
    blocked = bytearray(len(heads))
    # alive[a]: clauses for a not yet blocked; a is false at 0
    alive = [0] * n_atoms
    for h in heads:
        alive[h] += 1
    val = bytearray(n_atoms)  # 0 undefined, 1 true, 2 false

    frontier_t: set[int] = {heads[c] for c in range(len(heads)) if pending[c] == 0}
    frontier_f: set[int] = {a for a in range(n_atoms) if alive[a] == 0}
    rounds = 0
    while frontier_t or frontier_f:
        rounds += 1
        for a in frontier_t:
            val[a] = 1
        for a in frontier_f:
            val[a] = 2
        if trace is not None:
            trace(rounds, sorted(frontier_t | frontier_f))
        next_t: set[int] = set()
        next_f: set[int] = set()

        def satisfy(c: int) -> None:
            pending[c] -= 1
            if pending[c] == 0 and not blocked[c]:
                h = heads[c]
                if val[h] == 0:
                    next_t.add(h)

        def block(c: int) -> None:
            if blocked[c]:
                return
            blocked[c] = 1
            h = heads[c]
            alive[h] -= 1
            if alive[h] == 0 and val[h] == 0:
                next_f.add(h)

        for a in frontier_t:
            for c in occ.pos[a]:
                satisfy(c)
            for c in occ.neg[a]:
                block(c)
        for a in frontier_f:
            for c in occ.pos[a]:
                block(c)
            for c in occ.neg[a]:
                satisfy(c)
        # an atom cannot be both fired and fully blocked in a consistent stage
        next_f -= next_t
        frontier_t, frontier_f = next_t, next_f

    true = frozenset(a for a in range(n_atoms) if val[a] == 1)
    false = frozenset(a for a in range(n_atoms) if val[a] == 2)
    return Interpretation(p, true, false, rounds)


def _least_model_of_reduct(p: GroundProgram, occ: _Occurrences, assumed: bytearray) -> bytearray:
    """Least model of the reduct of ``p`` w.r.t. the atom set ``assumed``.

    Clauses with a negated atom in ``assumed`` are deleted, the remaining
    negative literals dropped; the positive residue is solved by unit
    propagation.
    """
    heads = p.heads
    n_atoms = len(p.atoms)
    model = bytearray(n_atoms)
    count = [len(ps) for ps in p.pos]
    active = [not any(assumed[a] for a in ns) for ns in p.neg]
    stack = []
    for c in range(len(heads)):
        if active[c] and count[c] == 0 and not model[heads[c]]:
            model[heads[c]] = 1
            stack.append(heads[c])
    while stack:
        a = stack.pop()
        for c in occ.pos[a]:
            count[c] -= 1
            if count[c] == 0 and active[c]:
                h = heads[c]
                if not model[h]:
                    model[h] = 1
                    stack.append(h)
    return model


def wellfounded_fixpoint(p: GroundProgram) -> Interpretation:
    """Well-founded model via the alternating fixpoint.

    With ``G`` the least-model-of-reduct operator, true atoms form the least
    fixpoint of ``G∘G`` reached from the empty set, and false atoms are those
    outside ``G`` of that set.
    """
    occ = _Occurrences(p)
    under = bytearray(len(p.atoms))
    rounds = 0
    while True:
        rounds += 1
        over = _least_model_of_reduct(p, occ, under)
        nxt = _least_model_of_reduct(p, occ, over)
        if nxt == under:
            break
        under = nxt
    true = frozenset(a for a, v in enumerate(under) if v)
    false = frozenset(a for a, v in enumerate(over) if not v)
    return Interpretation(p, true, false, rounds)


def evaluate(p: GroundProgram, semantics: str = "kunen") -> Interpretation:
    if semantics in ("kunen", "fitting"):
        return kunen_fixpoint(p)
    if semantics in ("wf", "wellfounded", "well-founded"):
        return wellfounded_fixpoint(p)
    raise ValueError(f"unknown semantics {semantics!r}")


def dominance_violations(weaker: Interpretation, stronger: Interpretation) -> list[int]:
    """Atoms decided by ``weaker`` that ``stronger`` does not decide identically."""
    bad = [a for a in weaker.true if a not in stronger.true]
    bad += [a for a in weaker.false if a not in stronger.false]
    return sorted(bad)


def from_values(p: GroundProgram, values: Iterable[tuple[int, TruthValue]]) -> Interpretation:
    t, f = set(), set()
    for a, v in values:
        if v is TruthValue.TRUE:
            t.add(a)
        elif v is TruthValue.FALSE:
            f.add(a)
    return Interpretation(p, frozenset(t), frozenset(f))
