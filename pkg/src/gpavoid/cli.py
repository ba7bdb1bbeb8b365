"""Command-line interface.

Exit status: 0 on success, 1 when a verification or bijection precondition
fails, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import counting, series, structures, verify
from .counting import CountQuery, NotClassifiableError
from .patterns import PatternSyntaxError, occurrences, parse_pattern
from .perm import BoundaryConstraint, END, INCREASING, format_permutation, no_constraint, parse_permutation

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CONSTRAINT_FLAGS = ("begin-inc", "begin-dec", "end-inc", "end-dec")


class UsageError(Exception):
    pass


def _dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _add_constraint(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    for flag in CONSTRAINT_FLAGS:
        group.add_argument(f"--{flag}", type=int, metavar="K",
                           help="run of length K (K=1 means no restriction)")


def _constraint(args: argparse.Namespace) -> BoundaryConstraint:
    for flag in CONSTRAINT_FLAGS:
        k = getattr(args, flag.replace("-", "_"), None)
        if k is not None:
            if k < 1:
                raise UsageError(f"--{flag} needs K >= 1")
            return BoundaryConstraint.from_flag(flag, k)
    return no_constraint()


def _lengths(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _count_one(q: CountQuery, method: str) -> int:
    if method == "formula":
        c = q.constraint
        if str(q.avoided) != "1-32" or c.placement != END or c.direction != INCREASING:
            raise UsageError("the formula method covers only --avoid 1-32 with --end-inc")
        if q.n == 0:
            return 1 if c.k == 1 else 0
        if q.n < c.k:
            return 0
        return structures.p_count_formula(q.n, c.k)
    return counting.count(q, method)


def cmd_count(args: argparse.Namespace) -> int:
    pattern = parse_pattern(args.avoid)
    constraint = _constraint(args)
    method = args.method
    if method is None:
        method = "recurrence" if (len(pattern) == 3 and pattern.is_consecutive) else "brute"
    records = []
    for n in _lengths(args.n):
        value = _count_one(CountQuery(pattern, constraint, n), method)
        records.append({"pattern": str(pattern), "constraint": str(constraint), "n": n,
                        "method": method, "count": str(value)})
    if args.format == "csv":
        print("n,count")
        for r in records:
            print(f"{r['n']},{r['count']}")
    elif len(records) == 1:
        print(_dumps(records[0]))
    else:
        print(_dumps(records))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    q = CountQuery(parse_pattern(args.avoid), _constraint(args), args.n)
    perms = list(counting.brute_enumerate(q))
    if args.format == "json":
        print(_dumps({"pattern": str(q.avoided), "constraint": str(q.constraint), "n": q.n,
                      "permutations": [format_permutation(p) for p in perms]}))
    else:
        for p in perms:
            print(format_permutation(p))
    return EXIT_OK


def cmd_occurrences(args: argparse.Namespace) -> int:
    g = parse_pattern(args.pattern)
    p = parse_permutation(args.perm)
    occ = occurrences(p, g)
    print(_dumps({"pattern": str(g), "perm": format_permutation(p),
                  "occurrences": [[i + 1 for i in t] for t in occ],
                  "subwords": [[p[i] for i in t] for t in occ]}))
    return EXIT_OK


def _read_input(text: str) -> str:
    return sys.stdin.read() if text == "-" else text


def cmd_bijection(args: argparse.Namespace) -> int:
    raw = _read_input(args.input).strip()
    k = args.k
    try:
        if args.direction == "partition-to-perm":
            pp = structures.MarkedPartition.from_json(raw)
            out = structures.partition_to_perm(pp, k)
            if args.check and structures.perm_to_partition(out, k) != pp:
                return _check_failed(raw)
            print(format_permutation(out))
        elif args.direction == "perm-to-partition":
            p = parse_permutation(raw)
            pp = structures.perm_to_partition(p, k)
            if args.check and structures.partition_to_perm(pp, k) != p:
                return _check_failed(raw)
            print(_dumps(pp.to_json()))
        elif args.direction == "perm-to-tree":
            p = parse_permutation(raw)
            t = structures.perm_to_tree(p)
            if args.check and structures.tree_to_perm(t) != p:
                return _check_failed(raw)
            print(_dumps(t.to_json()))
        else:
            t = structures.Tree.from_json(raw)
            p = structures.tree_to_perm(t)
            if args.check and structures.perm_to_tree(p) != t:
                return _check_failed(raw)
            print(format_permutation(p))
    except structures.BijectionError as exc:
        print(_dumps({"error": str(exc), "condition": exc.condition}))
        return EXIT_FAILED
    return EXIT_OK


def _check_failed(raw: str) -> int:
    print(_dumps({"error": "round trip did not return the input", "input": raw}))
    return EXIT_FAILED


def _format_fraction(a) -> str:
    return f"{a.numerator}/{a.denominator}"


def cmd_series(args: argparse.Namespace) -> int:
    order = args.order
    if args.base:
        s = series.build_base(args.base, order)
        label = args.base
    else:
        if args.row is not None:
            row, k = args.row, args.k
        else:
            if args.avoid is None:
                raise UsageError("give --row with --k, --avoid with a constraint, or --base")
            constraint = _constraint(args)
            row, _ = counting.classify(parse_pattern(args.avoid), constraint)
            k = constraint.k
        s = series.egf_table(row, k, order)
        label = f"row {row}, k={k}"
    values = []
    for n in range(order + 1):
        try:
            values.append(series.egf_coefficient(s, n))
        except ValueError:
            raise UsageError(f"{label}: a_{n} is irrational; only rational series can be printed") from None
    if args.format == "json":
        print(_dumps([{"n": n, "a": _format_fraction(a)} for n, a in enumerate(values)]))
    elif args.format == "csv":
        print("n,count")
        for n, a in enumerate(values):
            print(f"{n},{_format_fraction(a)}")
    else:
        for a in values:
            print(_format_fraction(a))
    return EXIT_OK


def cmd_identity(args: argparse.Namespace) -> int:
    rows = []
    ok = True
    for n in range(args.n_max + 1):
        left, right = structures.lemma2_sides(n)
        ok &= left == right
        rows.append({"n": n, "left": str(left), "right": str(right), "equal": left == right})
    print(_dumps({"identity": "bell-stirling", "passed": ok, "rows": rows}))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify.run(args.scope, args.n_max, args.k_max)
    print(_dumps(report))
    return EXIT_OK if report["passed"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpavoid", description="Count and verify constrained generalized-pattern avoiders.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count avoiders under a boundary constraint")
    p.add_argument("--avoid", required=True, help="pattern such as 132 or 1-32")
    _add_constraint(p)
    p.add_argument("--n", required=True, help="length, or an inclusive range A:B")
    p.add_argument("--method", choices=("brute", "recurrence", "series", "formula"))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list the avoiders in lexicographic order")
    p.add_argument("--avoid", required=True)
    _add_constraint(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("occurrences", help="list occurrences of a pattern (1-based positions)")
    p.add_argument("--pattern", required=True)
    p.add_argument("--perm", required=True)
    p.set_defaults(func=cmd_occurrences)

    p = sub.add_parser("bijection", help="apply one of the bijections")
    p.add_argument("direction", choices=("partition-to-perm", "perm-to-partition", "perm-to-tree", "tree-to-perm"))
    p.add_argument("input", help="JSON or permutation text; '-' reads stdin")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--check", action="store_true", help="apply the inverse and compare")
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("series", help="print EGF counts a_n for n = 0..order")
    p.add_argument("--row", type=int, choices=range(1, 7))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--avoid")
    _add_constraint(p, required=False)
    p.add_argument("--base", choices=series.CATALOG)
    p.add_argument("--order", type=int, default=series.DEFAULT_ORDER)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("identity", help="evaluate both sides of the Bell/Stirling identity")
    p.add_argument("--n-max", type=int, default=20)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("scope", choices=verify.SCOPES + ("all",))
    p.add_argument("--n-max", type=int)
    p.add_argument("--k-max", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PatternSyntaxError, NotClassifiableError, counting.BruteForceCapError,
            structures.DomainError, series.SeriesConsistencyError, ValueError, KeyError) as exc:
        print(f"gpavoid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
