"""Command-line front door.

Three subcommands: `poly` computes a family polynomial (by grammar or by
enumeration), `enumerate` lists structures or statistic histograms, and
`verify` runs the named verification checks.  Identical invocations give
byte-identical output; everything is UTF-8 with LF line endings.

Exit codes: 0 success, 1 verification failure, 2 usage or bounds error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .checks import CHECKS, CheckOptions, run_checks
from .grammar import FamilyKind, iterate_family
from .polyring import Polynomial
from .structures import (
    WordFamily,
    coefficient_table,
    enumerate_family,
    serialize_partition,
    serialize_word,
    weight_polynomial,
    weight_polynomial_univariate,
)

ENV_SEED = "POLYGRAM_SEED"

# Guards sized so a single command stays comfortably under a couple of
# minutes; raise with --max-n at your own risk.
KIND_BOUNDS = {
    FamilyKind.PARTITION_UNI: 16,
    FamilyKind.EULERIAN_UNI: 12,
    FamilyKind.STIRLING2_UNI: 12,
    FamilyKind.MARKED_UNI: 12,
    FamilyKind.PARTITION_MULTI: 14,
    FamilyKind.EULERIAN_MULTI: 7,
    FamilyKind.STIRLING2_MULTI: 6,
    FamilyKind.MARKED_MULTI: 6,
    FamilyKind.LEGENDRE: 4,
}

FAMILY_BOUNDS = {
    WordFamily.PERMUTATION: 8,
    WordFamily.PARTITION: 10,
    WordFamily.STIRLING: 6,
    WordFamily.MARKED_STIRLING: 6,
    WordFamily.LEGENDRE: 4,
    WordFamily.R_STIRLING: 12,  # bound applies to n * r
}

UNI_KINDS = (
    FamilyKind.PARTITION_UNI,
    FamilyKind.EULERIAN_UNI,
    FamilyKind.STIRLING2_UNI,
    FamilyKind.MARKED_UNI,
)

FAMILY_FOR_KIND = {
    FamilyKind.PARTITION_MULTI: WordFamily.PARTITION,
    FamilyKind.EULERIAN_MULTI: WordFamily.PERMUTATION,
    FamilyKind.STIRLING2_MULTI: WordFamily.STIRLING,
    FamilyKind.MARKED_MULTI: WordFamily.MARKED_STIRLING,
    FamilyKind.LEGENDRE: WordFamily.LEGENDRE,
}


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _default_seed() -> int:
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_SEED} must be an integer, got {raw!r}") from None


def _poly_text(p: Polynomial, fmt: str) -> str:
    if fmt == "json":
        return p.to_json()
    return str(p)


def cmd_poly(args) -> int:
    try:
        kind = FamilyKind.parse(args.kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bound = args.max_n if args.max_n is not None else KIND_BOUNDS[kind]
    if args.n < 0 or args.n > bound:
        raise UsageError(f"n = {args.n} outside [0, {bound}] for {kind.value}")
    if args.via == "grammar":
        poly = iterate_family(kind, args.n)
    elif kind in UNI_KINDS:
        poly = weight_polynomial_univariate(kind, args.n)
    elif args.n == 0:
        poly = iterate_family(kind, 0)
    else:
        poly = weight_polynomial(FAMILY_FOR_KIND[kind], args.n)
    _emit(_poly_text(poly, args.format), args.output)
    return 0


def cmd_enumerate(args) -> int:
    try:
        family = WordFamily.parse(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r = args.r
    if family is WordFamily.R_STIRLING and (r is None or r < 1):
        raise UsageError("r-stirling requires --r >= 1")
    if family is not WordFamily.R_STIRLING and r is not None:
        raise UsageError(f"--r does not apply to {family.value}")
    size = args.n * (r or 1)
    bound = args.max_n if args.max_n is not None else FAMILY_BOUNDS[family]
    if args.n < 1 or size > bound:
        raise UsageError(f"order {args.n} outside bounds for {family.value}")

    if args.stats:
        try:
            table = coefficient_table(family, args.n, args.stats, r)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.format == "json":
            _emit(
                json.dumps(
                    {args.stats: {str(k): v for k, v in table.items()}},
                    separators=(",", ":"),
                ),
                args.output,
            )
        else:
            lines = [f"{args.stats},count"]
            lines += [f"{k},{v}" for k, v in table.items()]
            _emit("\n".join(lines), args.output)
        return 0

    serialize = (
        serialize_partition if family is WordFamily.PARTITION else serialize_word
    )
    items = [serialize(obj) for obj in enumerate_family(family, args.n, r)]
    if args.format == "json":
        _emit(json.dumps(items, separators=(",", ":")), args.output)
    else:
        _emit("\n".join(items), args.output)
    return 0


def cmd_verify(args) -> int:
    names = args.check or ["all"]
    expanded: list[str] = []
    for name in names:
        if name == "all":
            expanded.extend(CHECKS)
        elif name in CHECKS:
            expanded.append(name)
        else:
            raise UsageError(
                f"unknown check {name!r}; choose from {', '.join(CHECKS)} or all"
            )
    options = CheckOptions(
        family=args.family,
        n=args.n,
        samples=args.samples,
        seed=args.seed if args.seed is not None else _default_seed(),
    )
    try:
        results = run_checks(expanded, options)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    all_passed = all(r.passed for r in results)
    if args.format == "json":
        payload = {
            "passed": all_passed,
            "checks": [r.to_json_dict() for r in results],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=False), args.output)
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.details} ({r.seconds:.2f}s)"
            for r in results
        ]
        lines.append("all checks passed" if all_passed else "some checks FAILED")
        _emit("\n".join(lines), args.output)
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polygram",
        description=(
            "Grammar-generated polynomials over Stirling-type permutations, "
            "their enumeration oracles, and exact verification suites."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    poly = sub.add_parser("poly", help="compute a family polynomial")
    poly.add_argument("--kind", required=True, help="grammar family kind")
    poly.add_argument("--n", type=int, required=True, help="family order")
    poly.add_argument(
        "--via",
        choices=("grammar", "enumeration"),
        default="grammar",
        help="computation path (default: grammar)",
    )
    poly.add_argument("--format", choices=("json", "text"), default="json")
    poly.add_argument("--output", help="write to file instead of stdout")
    poly.add_argument("--max-n", type=int, help="raise the built-in order bound")
    poly.set_defaults(func=cmd_poly)

    enum = sub.add_parser("enumerate", help="list structures or statistics")
    enum.add_argument("--family", required=True, help="structure family")
    enum.add_argument("--n", type=int, required=True, help="structure order")
    enum.add_argument("--r", type=int, help="copies per value (r-stirling only)")
    enum.add_argument("--stats", help="emit a statistic histogram instead of words")
    enum.add_argument("--format", choices=("text", "csv", "json"), default="text")
    enum.add_argument("--output", help="write to file instead of stdout")
    enum.add_argument("--max-n", type=int, help="raise the built-in order bound")
    enum.set_defaults(func=cmd_enumerate)

    verify = sub.add_parser("verify", help="run verification checks")
    verify.add_argument(
        "--check",
        action="append",
        help="check name (repeatable); default: all",
    )
    verify.add_argument("--family", help="restrict a check to one family")
    verify.add_argument("--n", type=int, help="restrict a check to one order bound")
    verify.add_argument("--samples", type=int, default=10000)
    verify.add_argument("--seed", type=int, help=f"default 42 or ${ENV_SEED}")
    verify.add_argument("--format", choices=("json", "text"), default="json")
    verify.add_argument("--output", help="write to file instead of stdout")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
