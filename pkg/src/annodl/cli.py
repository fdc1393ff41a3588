"""``adl`` command line: check, solve, query, compare, bench."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
import warnings
from pathlib import Path
from typing import Sequence

from . import conclusions, engine, gen, metaprogram, oracle
from .syntax import TheorySyntaxError, load_theory, parse_body_expr
from .theory import Tag, Theory, is_annotated, symbol_count

OK, INVALID, VIOLATION, USAGE = 0, 1, 2, 3

_PROOF_TAG_NAMES = {t.value: t for t in Tag if t.is_proof_tag}


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str) -> Theory:
    """Load a theory, or raise UsageError for unreadable paths."""
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    try:
        return load_theory(p)
    except (OSError, UnicodeDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}") from None


def _report_syntax(e: TheorySyntaxError) -> None:
    for err in e.errors:
        print(err, file=sys.stderr)


def cmd_check(args) -> int:
    try:
        _load(args.file)
    except TheorySyntaxError as e:
        _report_syntax(e)
        return INVALID
    print(f"{args.file}: ok")
    return OK


def _solve_text(cs: conclusions.ConclusionSet, undecided: bool) -> str:
    lines = []
    for v, tag, q in cs.conclusions(undecided):
        lines.append(f"{v.value}{tag.value} {q}")
    return "".join(line + "\n" for line in lines)


def cmd_solve(args) -> int:
    results = []
    for path in args.files:
        try:
            t = _load(path)
        except TheorySyntaxError as e:
            _report_syntax(e)
            return INVALID
        results.append((path, conclusions.solve(t, args.semantics)))

    out = sys.stdout
    if args.format == "json":
        if len(results) == 1:
            out.write(results[0][1].to_json(args.undecided) + "\n")
        else:
            body = ", ".join(
                f"{json.dumps(path)}: {cs.to_json(args.undecided)}" for path, cs in results
            )
            out.write("{" + body + "}\n")
        return OK
    for path, cs in results:
        if len(results) > 1:
            out.write(f"# {path}\n")
        out.write(_solve_text(cs, args.undecided))
    return OK


def cmd_query(args) -> int:
    try:
        expr = parse_body_expr(args.expr)
    except TheorySyntaxError as e:
        print(f"malformed expression {args.expr!r}: {e.errors[0].message}", file=sys.stderr)
        return USAGE
    try:
        t = _load(args.file)
    except TheorySyntaxError as e:
        _report_syntax(e)
        return INVALID
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", conclusions.UnknownLiteralWarning)
        v = conclusions.query(t, _PROOF_TAG_NAMES[args.context], expr, args.mode, args.semantics)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print(v)
    return OK


def _random_theories(args) -> list[tuple[str, Theory, Theory]]:
    """(name, theory for the inclusion leg, plain theory for the oracle leg)."""
    rng = random.Random(args.seed)
    out = []
    for _ in range(args.random):
        seed = rng.getrandbits(32)
        cfg = gen.GenConfig(
            seed=seed,
            atoms=args.atoms,
            rules=args.rules,
            max_body=args.max_body,
            sup_pairs=args.sup_pairs,
            annotation_mode=args.annotation_mode,
            fact_probability=args.fact_probability,
        )
        annotated = gen.generate(cfg)
        plain = annotated if args.annotation_mode == "none" else gen.generate(
            gen.GenConfig(**{**cfg.__dict__, "annotation_mode": "none"})
        )
        out.append((f"random seed={seed}", annotated, plain))
    return out


def cmd_compare(args) -> int:
    if args.random is not None:
        if args.files:
            raise UsageError("give either theory files or --random, not both")
        try:
            cases = _random_theories(args)
        except ValueError as e:
            raise UsageError(str(e)) from None
    else:
        if not args.files:
            raise UsageError("compare needs theory files or --random N")
        cases = []
        for path in args.files:
            try:
                t = _load(path)
            except TheorySyntaxError as e:
                _report_syntax(e)
                return INVALID
            if is_annotated(t) and not args.no_oracle:
                raise UsageError(
                    f"{path} uses annotations or fail-expressions; the oracle covers plain theories only"
                    " (use --no-oracle to run the inclusion check alone)"
                )
            cases.append((path, t, t))

    mismatches, violations = [], []
    for name, annotated, plain in cases:
        plain_cs = conclusions.solve(plain)
        if not args.no_oracle:
            mismatches += [(name, str(m)) for m in oracle.crosscheck(plain, plain_cs)]
        cs = plain_cs if annotated is plain else conclusions.solve(annotated)
        violations += [(name, str(v)) for v in conclusions.check_inclusions(cs)]
        if annotated is not plain:
            violations += [(name, str(v)) for v in conclusions.check_inclusions(plain_cs)]

    if args.format == "json":
        print(json.dumps({
            "schema": 1,
            "theories": len(cases),
            "mismatches": [{"theory": n, "detail": d} for n, d in mismatches],
            "inclusion_violations": [{"theory": n, "detail": d} for n, d in violations],
        }))
    else:
        for n, d in mismatches:
            print(f"mismatch: {n}: {d}")
        for n, d in violations:
            print(f"inclusion: {n}: {d}")
        print(f"theories: {len(cases)}  mismatches: {len(mismatches)}  inclusion violations: {len(violations)}")
    return VIOLATION if mismatches or violations else OK


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None
    if not sizes or any(s <= 0 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def bench_rows(sizes: Sequence[int], seed: int = 0) -> list[dict]:
    rows = []
    for size in sizes:
        t = gen.generate(gen.sized_config(size, seed))
        start = time.perf_counter()
        p = metaprogram.ground(t)
        engine.kunen_fixpoint(p)
        millis = (time.perf_counter() - start) * 1000
        rows.append({
            "size": size,
            "theory_symbols": symbol_count(t),
            "ground_symbols": p.symbol_count(),
            "millis": round(millis, 1),
        })
    return rows


def cmd_bench(args) -> int:
    rows = bench_rows(args.sizes, args.seed)
    if args.format == "json":
        print(json.dumps({"schema": 1, "seed": args.seed, "rows": rows}))
        return OK
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "ground_symbols", "millis"])
    for r in rows:
        w.writerow([r["size"], r["ground_symbols"], r["millis"]])
    sys.stdout.write(buf.getvalue())
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="adl", description="Annotated defeasible logic reasoner.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("check", help="parse and validate a theory")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="print the tagged conclusions of theories")
    p.add_argument("files", nargs="+")
    p.add_argument("--semantics", choices=("kunen", "wf"), default="kunen")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--undecided", action="store_true", help="also list undecided pairs")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("query", help="decide one body expression")
    p.add_argument("file")
    p.add_argument("expr", help='e.g. "free ~guilty", "[de] p", "fail [pa] q"')
    p.add_argument("--context", choices=sorted(_PROOF_TAG_NAMES), default="pa")
    p.add_argument("--mode", choices=("defeasibly", "supported"), default="defeasibly")
    p.add_argument("--semantics", choices=("kunen", "wf"), default="kunen")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("compare", help="cross-check against the oracle and the inclusion chains")
    p.add_argument("files", nargs="*")
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--atoms", type=int, default=6)
    p.add_argument("--rules", type=int, default=10)
    p.add_argument("--max-body", type=int, default=2)
    p.add_argument("--sup-pairs", type=int, default=4)
    p.add_argument("--fact-probability", type=float, default=0.2)
    p.add_argument("--annotation-mode", choices=gen.ANNOTATION_MODES, default="none")
    p.add_argument("--no-oracle", action="store_true", help="skip the oracle leg; annotated inputs allowed")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="time grounding and solving on generated theories")
    p.add_argument("--sizes", type=_parse_sizes, default=[100, 1000, 10000])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"adl: error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
