"""Annotated defeasible logic: parsing, grounding, three-valued evaluation."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .conclusions import ConclusionSet, ConclusionTag, Verdict, check_inclusions, extract, query, solve
from .metaprogram import ground, ground_reference
from .syntax import load_theory, parse_theory, print_theory
from .theory import BodyExpr, Literal, Rule, RuleKind, Tag, Theory, validate

__version__ = "0.1.0"

FIXTURES = (
    "guilty",
    "compensation",
    "blocking_vs_propagating",
    "support_gaps",
    "ambiguous_premise",
    "monotonicity_delta",
    "monotonicity_partial",
    "no_stable_model",
    "team_defeat",
    "empty",
)


def fixture_path(name: str) -> Path:
    return Path(str(resources.files(__name__) / "fixtures" / f"{name}.adl"))


def load_fixture(name: str) -> Theory:
    return load_theory(fixture_path(name))


__all__ = [
    "BodyExpr",
    "ConclusionSet",
    "ConclusionTag",
    "FIXTURES",
    "Literal",
    "Rule",
    "RuleKind",
    "Tag",
    "Theory",
    "Verdict",
    "check_inclusions",
    "extract",
    "fixture_path",
    "ground",
    "ground_reference",
    "load_fixture",
    "load_theory",
    "parse_theory",
    "print_theory",
    "query",
    "solve",
    "validate",
]
