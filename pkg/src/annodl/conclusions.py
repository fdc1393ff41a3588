"""Tagged conclusion sets, single queries and inclusion checks."""

from __future__ import annotations

import enum
import json
import warnings
from dataclasses import dataclass, field
from typing import Iterator

from . import engine, metaprogram
from .engine import Interpretation, TruthValue
from .metaprogram import GroundProgram, defeasibly, definitely, supported
from .theory import PROOF_TAGS, BodyExpr, Literal, Tag, Theory, literals_of


class ConclusionTag(enum.Enum):
    DELTA = "D"
    PA = "pa"
    PAS = "pa*"
    DE = "de"
    DES = "de*"
    SIGMA_PA = "sigma_pa"
    SIGMA_PAS = "sigma_pa*"
    SIGMA_DE = "sigma_de"
    SIGMA_DES = "sigma_de*"

    @property
    def proof_tag(self) -> Tag | None:
        return _PROOF_TAG.get(self)

    @property
    def is_sigma(self) -> bool:
        return self.value.startswith("sigma_")

    @classmethod
    def defeasible(cls, d: Tag) -> ConclusionTag:
        return _DEFEASIBLE[d]

    @classmethod
    def sigma(cls, d: Tag) -> ConclusionTag:
        return _SIGMA[d]


_DEFEASIBLE = {Tag.PA: ConclusionTag.PA, Tag.PAS: ConclusionTag.PAS, Tag.DE: ConclusionTag.DE, Tag.DES: ConclusionTag.DES}
_SIGMA = {
    Tag.PA: ConclusionTag.SIGMA_PA,
    Tag.PAS: ConclusionTag.SIGMA_PAS,
    Tag.DE: ConclusionTag.SIGMA_DE,
    Tag.DES: ConclusionTag.SIGMA_DES,
}
_PROOF_TAG = {**{v: k for k, v in _DEFEASIBLE.items()}, **{v: k for k, v in _SIGMA.items()}}
TAG_ORDER: tuple[ConclusionTag, ...] = tuple(ConclusionTag)


class Verdict(enum.Enum):
    PROVED = "+"
    REFUTED = "-"
    UNDECIDED = "?"

    @classmethod
    def of(cls, v: TruthValue) -> Verdict:
        return {TruthValue.TRUE: cls.PROVED, TruthValue.FALSE: cls.REFUTED}.get(v, cls.UNDECIDED)

    def inverted(self) -> Verdict:
        return {Verdict.PROVED: Verdict.REFUTED, Verdict.REFUTED: Verdict.PROVED}.get(self, self)

    def __str__(self) -> str:
        return {Verdict.PROVED: "proved", Verdict.REFUTED: "refuted", Verdict.UNDECIDED: "undecided"}[self]


@dataclass(frozen=True, order=True)
class Conclusion:
    sign: str
    tag: ConclusionTag
    literal: Literal

    def __str__(self) -> str:
        return f"{self.sign}{self.tag.value} {self.literal}"


class IncoherentConclusions(AssertionError):
    """A (tag, literal) pair was found both proved and refuted."""


def _sort_key(item: tuple[tuple[ConclusionTag, Literal], Verdict]):
    (tag, lit), _ = item
    return (str(lit), TAG_ORDER.index(tag))


@dataclass
class ConclusionSet:
    """Verdict for every (tag, literal) pair of a theory's literal universe."""

    literals: tuple[Literal, ...] = ()
    verdicts: dict[tuple[ConclusionTag, Literal], Verdict] = field(default_factory=dict)

    def verdict(self, tag: ConclusionTag, q: Literal) -> Verdict:
        return self.verdicts.get((tag, q), Verdict.UNDECIDED)

    def plus(self, tag: ConclusionTag) -> frozenset[Literal]:
        return frozenset(q for (t, q), v in self.verdicts.items() if t is tag and v is Verdict.PROVED)

    def minus(self, tag: ConclusionTag) -> frozenset[Literal]:
        return frozenset(q for (t, q), v in self.verdicts.items() if t is tag and v is Verdict.REFUTED)

    def __contains__(self, c: object) -> bool:
        if not isinstance(c, Conclusion):
            return False
        return self.verdict(c.tag, c.literal).value == c.sign

    def items(self) -> list[tuple[tuple[ConclusionTag, Literal], Verdict]]:
        return sorted(self.verdicts.items(), key=_sort_key)

    def conclusions(self, undecided: bool = False) -> Iterator[tuple[Verdict, ConclusionTag, Literal]]:
        for (tag, q), v in self.items():
            if v is not Verdict.UNDECIDED or undecided:
                yield v, tag, q

    def __iter__(self) -> Iterator[Conclusion]:
        for v, tag, q in self.conclusions():
            yield Conclusion(v.value, tag, q)

    def to_json(self, undecided: bool = False) -> str:
        rows = [{"literal": str(q), "tag": tag.value, "verdict": v.value} for v, tag, q in self.conclusions(undecided)]
        return json.dumps(rows)


def extract(t: Theory, i: Interpretation) -> ConclusionSet:
    """Read ±Δ, ±d and ±σ_d for every literal of ``t`` off a fixpoint of ``ground(t)``."""
    lits = tuple(sorted(literals_of(t), key=str))
    verdicts: dict[tuple[ConclusionTag, Literal], Verdict] = {}
    for q in lits:
        verdicts[ConclusionTag.DELTA, q] = Verdict.of(i.value(definitely(q)))
        for d in PROOF_TAGS:
            verdicts[ConclusionTag.defeasible(d), q] = Verdict.of(i.value(defeasibly(d, d, q)))
            verdicts[ConclusionTag.sigma(d), q] = Verdict.of(i.value(supported(d, d, q)))
    return ConclusionSet(lits, verdicts)


def solve(t: Theory, semantics: str = "kunen", program: GroundProgram | None = None) -> ConclusionSet:
    if program is None:
        program = metaprogram.ground(t)
    return extract(t, engine.evaluate(program, semantics))


class UnknownLiteralWarning(UserWarning):
    """The queried literal does not occur in the theory."""


def query(
    t: Theory,
    context: Tag,
    expr: BodyExpr,
    mode: str = "defeasibly",
    semantics: str = "kunen",
    interpretation: Interpretation | None = None,
) -> Verdict:
    """Verdict on ``expr`` read under the proof context ``context``.

    A literal never mentioned in ``t`` has no clauses and so is refuted (its
    fail form proved); an :class:`UnknownLiteralWarning` flags the case.
    """
    if not context.is_proof_tag:
        raise ValueError("query context must be a proof tag")
    if mode not in ("defeasibly", "supported"):
        raise ValueError(f"unknown query mode {mode!r}")
    if expr.literal not in literals_of(t):
        warnings.warn(f"literal {expr.literal} does not occur in the theory", UnknownLiteralWarning, stacklevel=2)
        v = Verdict.REFUTED
    else:
        if interpretation is None:
            interpretation = engine.evaluate(metaprogram.ground(t), semantics)
        tag = context if expr.tag is Tag.FREE else expr.tag
        mk = defeasibly if mode == "defeasibly" else supported
        v = Verdict.of(interpretation.value(mk(context, tag, expr.literal)))
    return v.inverted() if expr.failed else v


T = ConclusionTag
# (name, sign, chain from weaker to stronger containment)
INCLUSION_CHAINS: tuple[tuple[str, str, tuple[ConclusionTag, ...]], ...] = (
    ("a", "+", (T.DELTA, T.DES, T.DE, T.PA, T.SIGMA_DE, T.SIGMA_DES)),
    ("b", "-", (T.SIGMA_DES, T.SIGMA_DE, T.PA, T.DE, T.DES, T.DELTA)),
    ("c", "+", (T.PA, T.SIGMA_PA, T.SIGMA_DE)),
    ("d", "-", (T.SIGMA_DE, T.SIGMA_PA, T.PA)),
    ("e", "+", (T.DES, T.PAS, T.SIGMA_PAS, T.SIGMA_DES)),
    ("f", "-", (T.SIGMA_DES, T.SIGMA_PAS, T.PAS, T.DES)),
)
del T


@dataclass(frozen=True)
class InclusionViolation:
    chain: str
    sign: str
    smaller: ConclusionTag
    larger: ConclusionTag
    literal: Literal

    def __str__(self) -> str:
        s = self.sign
        return (f"chain ({self.chain}): {s}{self.smaller.value} {self.literal} holds "
                f"but {s}{self.larger.value} {self.literal} does not")


def check_inclusions(cs: ConclusionSet) -> list[InclusionViolation]:
    """Every adjacent containment of the six inclusion chains, with witnesses."""
    out = []
    for name, sign, chain in INCLUSION_CHAINS:
        get = cs.plus if sign == "+" else cs.minus
        for a, b in zip(chain, chain[1:]):
            for q in sorted(get(a) - get(b), key=str):
                out.append(InclusionViolation(name, sign, a, b, q))
    return out


def incoherent_pairs(cs: ConclusionSet) -> list[tuple[ConclusionTag, Literal]]:
    """Pairs both proved and refuted.  Always empty for a verdict map, kept as a hard check."""
    return sorted(
        ((tag, q) for tag in ConclusionTag for q in cs.plus(tag) & cs.minus(tag)),
        key=lambda x: (str(x[1]), TAG_ORDER.index(x[0])),
    )


@dataclass
class SemanticsReport:
    kunen: ConclusionSet
    wellfounded: ConclusionSet
    wf_only: list[tuple[ConclusionTag, Literal, Verdict]]
    violations: list[tuple[ConclusionTag, Literal, Verdict, Verdict]]
    atom_violations: list[metaprogram.GroundAtom]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.atom_violations


def compare_semantics(t: Theory, program: GroundProgram | None = None) -> SemanticsReport:
    """Kunen versus well-founded conclusions; Kunen decisions must survive unchanged."""
    if program is None:
        program = metaprogram.ground(t)
    ki = engine.kunen_fixpoint(program)
    wi = engine.wellfounded_fixpoint(program)
    kc, wc = extract(t, ki), extract(t, wi)
    wf_only, bad = [], []
    for (tag, q), kv in kc.items():
        wv = wc.verdict(tag, q)
        if kv is Verdict.UNDECIDED:
            if wv is not Verdict.UNDECIDED:
                wf_only.append((tag, q, wv))
        elif kv is not wv:
            bad.append((tag, q, kv, wv))
    atoms = [program.atoms[a] for a in engine.dominance_violations(ki, wi)]
    return SemanticsReport(kc, wc, wf_only, bad, atoms)
