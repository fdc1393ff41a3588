"""Text syntax for ``.adl`` theory files.

Grammar (whitespace-insensitive, ``%`` starts a line comment)::

    theory   := stmt* ;
    stmt     := "fact" literal "." | rule | suprel ;
    rule     := label ":" [ body ] arrow literal "." ;
    arrow    := "->" | "=>" | "~>" ;
    body     := bexpr { "," bexpr } ;
    bexpr    := [ "fail" ] [ "[" tagname "]" ] literal ;
    tagname  := "pa" | "pa*" | "de" | "de*" | "free" ;
    literal  := [ "~" ] ident ;
    suprel   := label ">" label "." ;

``fact`` and ``fail`` are reserved words.  Strict rules (``->``) may not
carry tags or fail-expressions.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

from .theory import BodyExpr, Literal, Rule, RuleKind, Tag, Theory, validate

if TYPE_CHECKING:
    from .conclusions import Conclusion

RESERVED = frozenset({"fact", "fail"})
_TAGS = {"pa": Tag.PA, "pa*": Tag.PAS, "de": Tag.DE, "de*": Tag.DES, "free": Tag.FREE}
_ARROWS = {"->": RuleKind.STRICT, "=>": RuleKind.DEFEASIBLE, "~>": RuleKind.DEFEATER}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_PUNCT = ("->", "=>", "~>", "~", ":", ",", ".", "[", "]", ">", "*")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class ErrorCategory(enum.Enum):
    LEXICAL = "lexical"
    SYNTACTIC = "syntactic"
    SEMANTIC = "semantic"


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    category: ErrorCategory
    message: str

    def __str__(self) -> str:
        return f"{self.span}: {self.category.value} error: {self.message}"


class TheorySyntaxError(Exception):
    """Carries every :class:`ParseError` found in one input."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("\n".join(str(e) for e in errors))


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", a punctuation string, or "eof"
    text: str
    span: SourceSpan


class _Fail(Exception):
    def __init__(self, error: ParseError):
        self.error = error


def _tokenize(text: str, file: str) -> tuple[list[_Token], list[ParseError]]:
    tokens: list[_Token] = []
    errors: list[ParseError] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            tokens.append(_Token("ident", word, SourceSpan(file, line, col, len(word))))
            i, col = m.end(), col + len(word)
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(_Token(p, p, SourceSpan(file, line, col, len(p))))
                i, col = i + len(p), col + len(p)
                break
        else:
            errors.append(ParseError(SourceSpan(file, line, col), ErrorCategory.LEXICAL,
                                     f"unexpected character {c!r}"))
            # lexical errors poison the statement; a "?" token makes the parser report and resync
            tokens.append(_Token("?", c, SourceSpan(file, line, col)))
            i, col = i + 1, col + 1
    # eof reuses the last token's span so errors at end of input stay inside the text
    eof_span = tokens[-1].span if tokens else SourceSpan(file, 1, 1, 0)
    tokens.append(_Token("eof", "", eof_span))
    return tokens, errors


class _Parser:
    def __init__(self, tokens: list[_Token], *, bare_tags: bool = False):
        self.toks = tokens
        self.pos = 0
        self.bare_tags = bare_tags

    @property
    def cur(self) -> _Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> _Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> _Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def fail(self, msg: str, tok: _Token | None = None) -> _Fail:
        tok = tok or self.cur
        if tok.kind == "?":
            # already reported by the lexer
            return _Fail(ParseError(tok.span, ErrorCategory.LEXICAL, f"unexpected character {tok.text!r}"))
        return _Fail(ParseError(tok.span, ErrorCategory.SYNTACTIC, msg))

    def expect(self, kind: str, what: str | None = None) -> _Token:
        if self.cur.kind != kind:
            raise self.fail(f"expected {what or repr(kind)}, found {self._describe(self.cur)}")
        return self.advance()

    @staticmethod
    def _describe(tok: _Token) -> str:
        if tok.kind == "eof":
            return "end of input"
        return repr(tok.text)

    def ident(self, what: str) -> _Token:
        tok = self.expect("ident", what)
        if tok.text in RESERVED:
            raise self.fail(f"reserved word {tok.text!r} cannot be used as {what}", tok)
        return tok

    def literal(self) -> Literal:
        positive = True
        if self.cur.kind == "~":
            self.advance()
            positive = False
        return Literal(self.ident("an atom").text, positive)

    def tagname(self) -> Tag:
        tok = self.expect("ident", "a tag name")
        name = tok.text
        if self.cur.kind == "*":
            self.advance()
            name += "*"
        if name not in _TAGS:
            raise self.fail(f"unknown tag {name!r} (expected pa, pa*, de, de* or free)", tok)
        return _TAGS[name]

    def bexpr(self) -> tuple[BodyExpr, _Token, bool]:
        start = self.cur
        failed = False
        annotated = False
        if self.cur.kind == "ident" and self.cur.text == "fail":
            self.advance()
            failed = annotated = True
            if self.cur.kind == "ident" and self.cur.text == "fail":
                raise self.fail("a fail-expression cannot wrap another fail-expression")
        tag = Tag.FREE
        if self.cur.kind == "[":
            self.advance()
            tag = self.tagname()
            self.expect("]", "']'")
            annotated = True
        elif (self.bare_tags and self.cur.kind == "ident" and self.cur.text in ("pa", "de", "free")
              and self.peek().kind in ("ident", "~", "*")):
            tag = self.tagname()
            annotated = True
        return BodyExpr(self.literal(), tag, failed), start, annotated

    def statement(self, sink: "_Sink") -> None:
        tok = self.cur
        if tok.kind == "ident" and tok.text == "fact":
            self.advance()
            q = self.literal()
            self.expect(".", "'.' after fact")
            sink.facts.append(q)
            return
        label = self.ident("a rule label")
        if self.cur.kind == ">":
            self.advance()
            other = self.ident("a rule label")
            self.expect(".", "'.' after superiority statement")
            sink.sup.append(((label.text, other.text), label.span))
            return
        self.expect(":", "':' or '>' after label")
        body: list[tuple[BodyExpr, _Token, bool]] = []
        if self.cur.kind not in _ARROWS:
            body.append(self.bexpr())
            while self.cur.kind == ",":
                self.advance()
                body.append(self.bexpr())
        if self.cur.kind not in _ARROWS:
            raise self.fail(f"expected ',' or an arrow (->, =>, ~>), found {self._describe(self.cur)}")
        kind = _ARROWS[self.advance().kind]
        if kind is RuleKind.STRICT:
            for _, start, annotated in body:
                if annotated:
                    raise self.fail("strict rules cannot carry tags or fail-expressions", start)
        head = self.literal()
        self.expect(".", "'.' at end of rule")
        sink.rules.append((Rule(label.text, kind, head, tuple(e for e, _, _ in body)), label.span))

    def resync(self) -> None:
        while self.cur.kind not in (".", "eof"):
            self.advance()
        if self.cur.kind == ".":
            self.advance()


class _Sink:
    def __init__(self) -> None:
        self.facts: list[Literal] = []
        self.rules: list[tuple[Rule, SourceSpan]] = []
        self.sup: list[tuple[tuple[str, str], SourceSpan]] = []


def _semantic_errors(t: Theory, sink: _Sink, file: str) -> list[ParseError]:
    rule_spans: dict[str, list[SourceSpan]] = {}
    for r, sp in sink.rules:
        rule_spans.setdefault(r.label, []).append(sp)
    sup_spans: dict[tuple[str, str], SourceSpan] = {}
    for pair, sp in sink.sup:
        sup_spans.setdefault(pair, sp)
    errors = []
    for v in validate(t):
        span = SourceSpan(file, 1, 1, 0)
        if v.category == "DuplicateLabel":
            span = rule_spans[v.location[0]][1]
        elif v.category == "UnknownLabel":
            span = sup_spans[v.location]
        elif v.category == "CyclicSuperiority":
            edges = list(zip(v.location, v.location[1:]))
            span = min((sup_spans[e] for e in edges), key=lambda s: (s.line, s.column))
        elif v.location and v.location[0] in rule_spans:
            span = rule_spans[v.location[0]][0]
        errors.append(ParseError(span, ErrorCategory.SEMANTIC, v.message))
    return errors


def parse_theory(text: str, file: str = "<string>") -> Theory:
    """Parse and validate a theory; raise :class:`TheorySyntaxError` on any error."""
    tokens, lex_errors = _tokenize(text, file)
    p = _Parser(tokens)
    sink = _Sink()
    errors: list[ParseError] = []
    while p.cur.kind != "eof":
        try:
            p.statement(sink)
        except _Fail as f:
            errors.append(f.error)
            p.resync()
    # lexical errors are already represented by the statement that hit the bad token
    reported = {(e.span.line, e.span.column) for e in errors}
    errors.extend(e for e in lex_errors if (e.span.line, e.span.column) not in reported)
    if errors:
        errors.sort(key=lambda e: (e.span.line, e.span.column))
        raise TheorySyntaxError(errors)
    t = Theory(frozenset(sink.facts), tuple(r for r, _ in sink.rules), frozenset(pair for pair, _ in sink.sup))
    sem = _semantic_errors(t, sink, file)
    if sem:
        raise TheorySyntaxError(sem)
    return t


def load_theory(path: str | Path) -> Theory:
    path = Path(path)
    return parse_theory(path.read_text(encoding="utf-8"), str(path))


def parse_body_expr(text: str) -> BodyExpr:
    """Parse a single body expression such as ``fail [pa] p``.

    Tags may also be written bare (``free ~guilty``, ``de* p``) when a
    literal follows.
    """
    tokens, lex_errors = _tokenize(text, "<expr>")
    if lex_errors:
        raise TheorySyntaxError(lex_errors)
    p = _Parser(tokens, bare_tags=True)
    try:
        expr, _, _ = p.bexpr()
        if p.cur.kind != "eof":
            raise p.fail(f"unexpected {p._describe(p.cur)} after expression")
    except _Fail as f:
        raise TheorySyntaxError([f.error]) from None
    return expr


def format_body_expr(e: BodyExpr) -> str:
    parts = []
    if e.failed:
        parts.append("fail")
    if e.tag is not Tag.FREE:
        parts.append(f"[{e.tag.value}]")
    parts.append(str(e.literal))
    return " ".join(parts)


def format_rule(r: Rule) -> str:
    body = ", ".join(format_body_expr(e) for e in r.body)
    lhs = f"{r.label}: {body} " if body else f"{r.label}: "
    return f"{lhs}{r.kind.value} {r.head}."


def print_theory(t: Theory) -> str:
    lines = [f"fact {q}." for q in sorted(t.facts)]
    lines += [format_rule(r) for r in t.rules]
    lines += [f"{a} > {b}." for a, b in sorted(t.sup)]
    return "".join(line + "\n" for line in lines)


def print_conclusion(c: "Conclusion") -> str:
    return f"{c.sign}{c.tag.value} {c.literal}"
