"""Grounding of the annotated meta-program into a propositional normal program.

The grounder instantiates every clause schema directly over the four proof
tags, the literals of the theory and its rule labels; no general-purpose
unifier is involved.  ``FREE`` annotations are replaced by the context tag
and fail-expressions become negative body literals, so neither survives in
the ground program.

:func:`ground_reference` builds the single-logic programs for one proof tag
over unsubscripted predicates; they serve as the independent side of the
correspondence check between the annotated and the original logics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Sequence

from .theory import (
    PROOF_TAGS,
    BodyExpr,
    Literal,
    Rule,
    RuleKind,
    Tag,
    Theory,
    literals_of,
    require_unannotated,
)

DEFINITELY = "definitely"
DEFEASIBLY = "defeasibly"
OVERRULED = "overruled"
DEFEATED = "defeated"
SUPPORTED = "supported"
BEATEN = "beaten"


class GroundAtom(NamedTuple):
    """One ground meta-program atom.

    ``context`` is the subscript tag and ``tag`` the annotation of the literal
    argument; both are ``None`` where the predicate has no such argument
    (and everywhere in the reference programs).  Team-defeat atoms leave
    ``rule`` unset: their truth never depends on the rule being overruled.
    """

    pred: str
    literal: Literal
    context: Tag | None = None
    tag: Tag | None = None
    rule: str | None = None
    attacker: str | None = None

    def __str__(self) -> str:
        s = self.pred
        if self.context is not None:
            s += f"[{self.context.value}]"
        if self.tag is not None:
            s += f"[{self.tag.value}]"
        args = []
        if self.pred == DEFEATED:
            args.append(self.rule if self.rule is not None else "_")
            args.append(self.attacker)
        elif self.rule is not None:
            args.append(self.rule)
        args.append(str(self.literal))
        return f"{s}({','.join(args)})"


def definitely(q: Literal) -> GroundAtom:
    return GroundAtom(DEFINITELY, q)


def defeasibly(z: Tag | None, t: Tag | None, q: Literal) -> GroundAtom:
    return GroundAtom(DEFEASIBLY, q, z, t)


def supported(z: Tag | None, t: Tag | None, q: Literal) -> GroundAtom:
    return GroundAtom(SUPPORTED, q, z, t)


def overruled(z: Tag | None, r: str, q: Literal) -> GroundAtom:
    return GroundAtom(OVERRULED, q, z, None, r)


def defeated(z: Tag | None, r: str | None, s: str, q: Literal) -> GroundAtom:
    return GroundAtom(DEFEATED, q, z, None, r, s)


def beaten(z: Tag | None, r: str, q: Literal) -> GroundAtom:
    return GroundAtom(BEATEN, q, z, None, r)


class GroundClause(NamedTuple):
    head: GroundAtom
    pos: tuple[GroundAtom, ...]
    neg: tuple[GroundAtom, ...]

    def __str__(self) -> str:
        body = [str(a) for a in self.pos] + [f"not {a}" for a in self.neg]
        if not body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(body)}."


@dataclass
class GroundProgram:
    """Clauses over integer atom ids; ``atoms[i]`` is the atom with id ``i``."""

    atoms: list[GroundAtom] = field(default_factory=list)
    index: dict[GroundAtom, int] = field(default_factory=dict)
    heads: list[int] = field(default_factory=list)
    pos: list[tuple[int, ...]] = field(default_factory=list)
    neg: list[tuple[int, ...]] = field(default_factory=list)

    def atom_id(self, a: GroundAtom) -> int:
        i = self.index.get(a)
        if i is None:
            i = self.index[a] = len(self.atoms)
            self.atoms.append(a)
        return i

    def add(self, head: GroundAtom, pos: Sequence[GroundAtom] = (), neg: Sequence[GroundAtom] = ()) -> None:
        # dict.fromkeys dedups while keeping order
        self.heads.append(self.atom_id(head))
        self.pos.append(tuple(dict.fromkeys(self.atom_id(a) for a in pos)))
        self.neg.append(tuple(dict.fromkeys(self.atom_id(a) for a in neg)))

    def __len__(self) -> int:
        return len(self.heads)

    def clauses(self) -> Iterator[GroundClause]:
        at = self.atoms
        for h, p, n in zip(self.heads, self.pos, self.neg):
            yield GroundClause(at[h], tuple(at[i] for i in p), tuple(at[i] for i in n))

    def symbol_count(self) -> int:
        return sum(1 + len(p) + len(n) for p, n in zip(self.pos, self.neg))

    def dump(self) -> str:
        return "".join(f"{c}\n" for c in self.clauses())


@dataclass(frozen=True)
class FactBase:
    """Relational representation of a theory, as fed to the meta-program."""

    facts: tuple[tuple, ...]

    def __iter__(self):
        return iter(self.facts)

    def __str__(self) -> str:
        return "".join(_format_record(r) + ".\n" for r in self.facts)


TAG_FACTS: tuple[tuple[str, Tag], ...] = (
    ("team", Tag.PA),
    ("team", Tag.DE),
    ("indiv", Tag.PAS),
    ("indiv", Tag.DES),
    ("ambiguity_blocking", Tag.PAS),
    ("ambiguity_blocking", Tag.PA),
    ("ambiguity_propagating", Tag.DES),
    ("ambiguity_propagating", Tag.DE),
    ("proof_tag", Tag.PAS),
    ("proof_tag", Tag.PA),
    ("proof_tag", Tag.DES),
    ("proof_tag", Tag.DE),
)

_KIND_PRED = {RuleKind.STRICT: "strict", RuleKind.DEFEASIBLE: "defeasible", RuleKind.DEFEATER: "defeater"}


def _format_term(x) -> str:
    if isinstance(x, BodyExpr):
        s = f"{x.tag.value} {x.literal}"
        return f"fail {s}" if x.failed else s
    if isinstance(x, tuple):
        return "[" + ",".join(_format_term(y) for y in x) + "]"
    if isinstance(x, Tag):
        return x.value
    return str(x)


def _format_record(rec: tuple) -> str:
    return f"{rec[0]}({','.join(_format_term(x) for x in rec[1:])})"


def translate(t: Theory) -> FactBase:
    """Represent ``t`` as ``fact``/``strict``/``defeasible``/``defeater``/``sup`` records.

    The twelve tag-classification facts come first.
    """
    recs: list[tuple] = list(TAG_FACTS)
    recs += [("fact", q) for q in sorted(t.facts)]
    recs += [(_KIND_PRED[r.kind], r.label, r.head, r.body) for r in t.rules]
    recs += [("sup", a, b) for a, b in sorted(t.sup)]
    return FactBase(tuple(recs))


class _Index:
    def __init__(self, t: Theory):
        self.lits = sorted(literals_of(t))
        self.supportive: dict[Literal, list[Rule]] = {}
        self.all: dict[Literal, list[Rule]] = {}
        for r in t.rules:
            self.all.setdefault(r.head, []).append(r)
            if r.supportive:
                self.supportive.setdefault(r.head, []).append(r)
        self.sup = t.sup
        self.rules = t.rules
        self.by_label = {r.label: r for r in t.rules}

    def attackers(self, q: Literal) -> list[Rule]:
        return self.all.get(q.complement(), [])


AtomMaker = Callable[[Tag, Tag, Literal], GroundAtom]


def _compile_body(body: Sequence[BodyExpr], ctx: Tag, mk: AtomMaker) -> tuple[list[GroundAtom], list[GroundAtom]]:
    pos: list[GroundAtom] = []
    neg: list[GroundAtom] = []
    for e in body:
        tag = ctx if e.tag is Tag.FREE else e.tag
        (neg if e.failed else pos).append(mk(ctx, tag, e.literal))
    return pos, neg


def ground(t: Theory) -> GroundProgram:
    """Ground the annotated meta-program for ``t`` (assumed valid)."""
    ix = _Index(t)
    p = GroundProgram()

    for q in ix.lits:
        p.atom_id(definitely(q))
    # monotonic provability
    for q in sorted(t.facts):
        p.add(definitely(q))
    for r in t.rules:
        if r.kind is RuleKind.STRICT:
            p.add(definitely(r.head), [definitely(e.literal) for e in r.body])

    # a definitely provable literal is defeasibly proved and supported under every tag pair
    for q in ix.lits:
        d = definitely(q)
        for z in PROOF_TAGS:
            for y in PROOF_TAGS:
                p.add(defeasibly(z, y, q), [d])
                p.add(supported(z, y, q), [d])

    for r in ix.rules:
        if not r.supportive:
            continue
        q = r.head
        for y in PROOF_TAGS:
            pos, neg = _compile_body(r.body, y, defeasibly)
            neg = neg + [definitely(q.complement()), overruled(y, r.label, q)]
            for z in PROOF_TAGS:
                p.add(defeasibly(z, y, q), pos, neg)
            pos, neg = _compile_body(r.body, y, supported)
            neg = neg + [beaten(y, r.label, q)]
            for z in PROOF_TAGS:
                p.add(supported(z, y, q), pos, neg)

    for z in PROOF_TAGS:
        via = defeasibly if z.is_blocking else supported
        for r in ix.rules:
            if not r.supportive:
                continue
            q = r.head
            for s in ix.attackers(q):
                pos, neg = _compile_body(s.body, z, via)
                if z.is_team:
                    guard = defeated(z, None, s.label, s.head)
                else:
                    guard = defeated(z, r.label, s.label, s.head)
                p.add(overruled(z, r.label, q), pos, neg + [guard])
            p.atom_id(overruled(z, r.label, q))
            p.atom_id(beaten(z, r.label, q))

        if z.is_team:
            for a, b in sorted(t.sup):
                tr, sr = ix.by_label.get(a), ix.by_label.get(b)
                if tr is None or sr is None or not tr.supportive or tr.head != sr.head.complement():
                    continue
                pos, neg = _compile_body(tr.body, z, defeasibly)
                p.add(defeated(z, None, sr.label, sr.head), pos, neg)
        else:
            for r in ix.rules:
                if not r.supportive:
                    continue
                for s in ix.attackers(r.head):
                    if (r.label, s.label) in ix.sup:
                        p.add(defeated(z, r.label, s.label, s.head))

        for r in ix.rules:
            if not r.supportive:
                continue
            q = r.head
            for s in ix.attackers(q):
                if (s.label, r.label) in ix.sup:
                    pos, neg = _compile_body(s.body, z, defeasibly)
                    p.add(beaten(z, r.label, q), pos, neg)
    return p


def _ref_defeasibly(ctx, tag, q) -> GroundAtom:
    return GroundAtom(DEFEASIBLY, q)


def _ref_supported(ctx, tag, q) -> GroundAtom:
    return GroundAtom(SUPPORTED, q)


def ground_reference(t: Theory, d: Tag) -> GroundProgram:
    """Ground the original single-logic meta-program for proof tag ``d``.

    Raises :class:`~annodl.theory.AnnotatedInputError` on tags or fail-expressions.
    """
    if not d.is_proof_tag:
        raise ValueError("ground_reference needs a proof tag")
    require_unannotated(t)
    ix = _Index(t)
    p = GroundProgram()

    def body(rule: Rule, mk) -> list[GroundAtom]:
        return _compile_body(rule.body, d, mk)[0]

    for q in ix.lits:
        p.atom_id(definitely(q))
    for q in sorted(t.facts):
        p.add(definitely(q))
    for r in t.rules:
        if r.kind is RuleKind.STRICT:
            p.add(definitely(r.head), [definitely(e.literal) for e in r.body])

    for q in ix.lits:
        p.add(GroundAtom(DEFEASIBLY, q), [definitely(q)])
    for r in ix.rules:
        if r.supportive:
            p.add(GroundAtom(DEFEASIBLY, r.head), body(r, _ref_defeasibly),
                  [definitely(r.head.complement()), overruled(None, r.label, r.head)])
            p.atom_id(overruled(None, r.label, r.head))

    attack = _ref_defeasibly if d.is_blocking else _ref_supported
    for r in ix.rules:
        if not r.supportive:
            continue
        q = r.head
        for s in ix.attackers(q):
            if d.is_team:
                p.add(overruled(None, r.label, q), body(s, attack), [defeated(None, None, s.label, s.head)])
            elif (r.label, s.label) not in ix.sup:
                p.add(overruled(None, r.label, q), body(s, attack))

    if d.is_team:
        for a, b in sorted(t.sup):
            tr, sr = ix.by_label.get(a), ix.by_label.get(b)
            if tr is None or sr is None or not tr.supportive or tr.head != sr.head.complement():
                continue
            p.add(defeated(None, None, sr.label, sr.head), body(tr, _ref_defeasibly))

    if d.is_propagating:
        for q in ix.lits:
            p.add(GroundAtom(SUPPORTED, q), [definitely(q)])
        for r in ix.rules:
            if not r.supportive:
                continue
            q = r.head
            p.add(GroundAtom(SUPPORTED, q), body(r, _ref_supported), [beaten(None, r.label, q)])
            p.atom_id(beaten(None, r.label, q))
            for s in ix.attackers(q):
                if (s.label, r.label) in ix.sup:
                    p.add(beaten(None, r.label, q), body(s, _ref_defeasibly))
    return p


def simplify(p: GroundProgram) -> GroundProgram:
    """Drop clauses that can never fire and negative literals over undefined atoms.

    Atoms without clauses are false under completion, so a clause with such
    an atom in its positive body is dead and ``not a`` is trivially true.
    Iterated to a fixpoint; the atom universe is unchanged.
    """
    live = list(range(len(p)))
    while True:
        defined = {p.heads[c] for c in live}
        kept = [c for c in live if all(a in defined for a in p.pos[c])]
        if len(kept) == len(live):
            break
        live = kept
    defined = {p.heads[c] for c in live}
    out = GroundProgram(list(p.atoms), dict(p.index))
    for c in live:
        out.heads.append(p.heads[c])
        out.pos.append(p.pos[c])
        out.neg.append(tuple(a for a in p.neg[c] if a in defined))
    return out
