"""Command-line interface.

Subcommands:

* ``volume``      print V_{g,n} (text, JSON or LaTeX), optionally evaluated
* ``intersect``   psi/kappa intersection numbers from volume coefficients
* ``verify``      run relation suites and/or the kernel quadrature oracle
* ``compact``     closed-surface volumes V_{g,0}
* ``table``       export the memoized volume table as a cache file
* ``diag-zograf`` large-genus ratio diagnostic (no pass/fail)

Exit codes: 0 success, 1 verification failure, 2 usage error.  Structured
output goes to stdout, diagnostics to stderr.  A persistent cache file can
be supplied with ``--cache`` or the WPVOL_CACHE environment variable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .exact import PiPoly, rat_to_str
from .intersect import (
    RELATIONS,
    compact_volume,
    intersection_number,
    run_relation_suite,
    zograf_ratio,
)
from .lpoly import LPoly
from .oracle import kernel_identity_report, moment_validation_report
from .recursion import InvariantViolation, VolumeTable, is_stable, moduli_dim

CACHE_FORMAT = "wp-volume-table"
CACHE_VERSION = 1
# Convention stamp: a cache written under a different volume convention
# must be rejected rather than silently reinterpreted.
CONVENTION = "internal-halved-V11"


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------
# rendering


def _pi_part_text(k: int, q: Fraction) -> str:
    if k == 0:
        return str(q)
    piece = f"pi^{2 * k}"
    return piece if q == 1 else f"{q}*{piece}"


def render_pipoly_text(p: PiPoly) -> str:
    return p.as_str()


def render_pipoly_latex(p: PiPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, q in p.items():
        coeff = (
            str(q.numerator)
            if q.denominator == 1
            else rf"\frac{{{q.numerator}}}{{{q.denominator}}}"
        )
        parts.append(coeff + (rf"\pi^{{{2 * k}}}" if k else ""))
    return " + ".join(parts)


def _monomial_text(alpha) -> str:
    return " ".join(f"L{i + 1}^{2 * a}" for i, a in enumerate(alpha) if a)


def render_lpoly_text(p: LPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for alpha, c in p.sorted_items():
        mono = _monomial_text(alpha)
        for k, q in c.items():
            head = _pi_part_text(k, q)
            parts.append(f"{head}*{mono}" if mono else head)
    return " + ".join(parts)


def render_lpoly_latex(p: LPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for alpha, c in p.sorted_items():
        mono = " ".join(f"L_{{{i + 1}}}^{{{2 * a}}}" for i, a in enumerate(alpha) if a)
        for k, q in c.items():
            coeff = (
                str(q.numerator)
                if q.denominator == 1
                else rf"\frac{{{q.numerator}}}{{{q.denominator}}}"
            )
            pi = rf"\pi^{{{2 * k}}}" if k else ""
            parts.append(" ".join(x for x in (coeff + pi, mono) if x))
    return " + ".join(parts)


# ----------------------------------------------------------------------
# cache file


def save_cache(table: VolumeTable, path: str) -> None:
    payload = {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "tool": f"wpvol {__version__}",
        "convention": CONVENTION,
        "entries": table.to_entries(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_cache(path: str, validate: bool = True) -> VolumeTable:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != CACHE_FORMAT or payload.get("version") != CACHE_VERSION:
        raise UsageError(f"{path}: not a recognized volume table cache")
    if payload.get("convention") != CONVENTION:
        raise UsageError(
            f"{path}: cache written under convention "
            f"{payload.get('convention')!r}, expected {CONVENTION!r}"
        )
    return VolumeTable.from_entries(payload["entries"], validate=validate)


def _open_table(args) -> VolumeTable:
    path = args.cache or os.environ.get("WPVOL_CACHE")
    if path and os.path.exists(path):
        return load_cache(path)
    return VolumeTable()


def _close_table(table: VolumeTable, args) -> None:
    path = args.cache or os.environ.get("WPVOL_CACHE")
    if path:
        save_cache(table, path)


# ----------------------------------------------------------------------
# subcommands


def _parse_lengths(text: str, n: int) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise UsageError(f"expected {n} lengths, got {len(parts)}")
    try:
        values = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad length list: {exc}") from None
    if any(v < 0 for v in values):
        raise UsageError("boundary lengths must be non-negative")
    return values


def cmd_volume(args) -> int:
    g, n = args.g, args.n
    if n == 0:
        raise UsageError("closed surfaces have no boundary polynomial; use 'compact'")
    if not is_stable(g, n):
        raise UsageError(f"({g},{n}) is not a stable signature")
    table = _open_table(args)
    poly = table.volume(g, n) if args.internal_convention else table.true_volume(g, n)
    if args.lengths is not None:
        values = _parse_lengths(args.lengths, n)
        exact = poly.eval_rational(values)
        if args.format == "json":
            print(
                json.dumps(
                    {
                        "g": g,
                        "n": n,
                        "lengths": [rat_to_str(v) for v in values],
                        "value": exact.to_records(),
                        "float": exact.to_float(),
                    },
                    indent=2,
                )
            )
        else:
            render = render_pipoly_latex if args.format == "latex" else render_pipoly_text
            print(f"{render(exact)} = {exact.to_float():.12g}")
    elif args.format == "json":
        print(json.dumps({"g": g, "n": n, "terms": poly.to_records()}, indent=2))
    elif args.format == "latex":
        print(render_lpoly_latex(poly))
    else:
        print(render_lpoly_text(poly))
    _close_table(table, args)
    return 0


def cmd_intersect(args) -> int:
    g = args.g
    alpha = tuple(args.alpha)
    n = len(alpha)
    if n == 0:
        raise UsageError("alpha must have at least one entry")
    if not is_stable(g, n):
        raise UsageError(f"({g},{n}) is not a stable signature")
    table = _open_table(args)
    d = moduli_dim(g, n)
    m = d - sum(alpha)
    if args.kappa is not None and args.kappa != m:
        print("0")
        print(
            f"note: kappa power {args.kappa} does not match "
            f"3g-3+n-|alpha| = {m}; the pairing is zero by degree",
            file=sys.stderr,
        )
        return 0
    if m < 0:
        print("0")
        print(
            f"note: |alpha| exceeds 3g-3+n = {d}; the pairing is zero by degree",
            file=sys.stderr,
        )
        return 0
    value = intersection_number(table, g, alpha)
    print(f"kappa-normalized: {rat_to_str(value.kappa)}  (kappa_1 power {value.m})")
    print(f"omega-normalized: {render_pipoly_text(value.omega)}")
    _close_table(table, args)
    return 0


def cmd_compact(args) -> int:
    if args.g < 2:
        raise UsageError("closed-surface volumes need genus >= 2")
    table = _open_table(args)
    v = compact_volume(table, args.g)
    if args.format == "json":
        print(json.dumps({"g": args.g, "n": 0, "value": v.to_records()}, indent=2))
    elif args.format == "latex":
        print(render_pipoly_latex(v))
    else:
        print(render_pipoly_text(v))
    _close_table(table, args)
    return 0


def cmd_table(args) -> int:
    table = _open_table(args)
    table.ensure(args.max_dim, threads=args.threads)
    save_cache(table, args.out)
    print(f"wrote {len(table.signatures())} entries to {args.out}", file=sys.stderr)
    _close_table(table, args)
    return 0


def cmd_diag_zograf(args) -> int:
    table = _open_table(args)
    n = args.n
    print("# g  ratio V_{g,n}(0) / [(4 pi^2)^(2g+n-3) (2g+n-3)! / sqrt(g pi)]")
    for g in range(1 if n >= 1 else 2, args.gmax + 1):
        if not is_stable(g, n):
            continue
        print(f"{g}  {zograf_ratio(table, g, n):.6f}")
    _close_table(table, args)
    return 0


def _kernel_suite() -> list[dict]:
    return moment_validation_report() + kernel_identity_report()


def cmd_verify(args) -> int:
    failures = 0
    results_json: list[dict] = []

    if args.relation in ("kernels", "all"):
        for rec in _kernel_suite():
            failures += 0 if rec["pass"] else 1
            if args.format == "json":
                results_json.append(rec)
            else:
                status = "PASS" if rec["pass"] else "FAIL"
                print(
                    f"kernels {status} {rec['check']} "
                    f"max_dev={rec['max_abs_dev']:.3e} tol={rec['tolerance']:.0e}"
                )

    if args.relation != "kernels":
        table = _open_table(args)
        table.ensure(args.max_dim, threads=args.threads)
        relations = RELATIONS if args.relation == "all" else (args.relation,)
        for rel in relations:
            records = run_relation_suite(table, rel, args.max_dim)
            for rec in records:
                failures += 0 if rec.passed else 1
                if args.format == "json":
                    results_json.append(rec.to_json())
                else:
                    status = "PASS" if rec.passed else "FAIL"
                    where = f"g={rec.g} n={rec.n}"
                    if rec.alpha is not None:
                        where += f" alpha={list(rec.alpha)}"
                    line = f"{rec.relation} {status} {where}"
                    if not rec.passed:
                        line += f" lhs={rec.lhs} rhs={rec.rhs}"
                    print(line)
            print(
                f"# {rel}: {sum(r.passed for r in records)}/{len(records)} passed",
                file=sys.stderr,
            )
        _close_table(table, args)

    if args.format == "json":
        print(json.dumps(results_json, indent=2))
    return 1 if failures else 0


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpvol",
        description="Exact Weil-Petersson volume polynomials, intersection "
        "numbers, and identity verification.",
    )
    parser.add_argument("--version", action="version", version=f"wpvol {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="path of a persistent table cache (JSON)")
    common.add_argument(
        "--threads", type=int, default=1, help="worker threads for table builds"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", parents=[common], help="print a volume polynomial")
    p.add_argument("g", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--lengths", help="comma-separated rational boundary lengths")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument(
        "--internal-convention",
        action="store_true",
        help="report the recursion's halved value at (1,1)",
    )
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser(
        "intersect", parents=[common], help="psi/kappa intersection numbers"
    )
    p.add_argument("g", type=int)
    p.add_argument("alpha", type=int, nargs="+", help="psi exponents d_1 .. d_n")
    p.add_argument("--kappa", type=int, help="expected kappa_1 power (checked)")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser(
        "verify", parents=[common], help="run a verification suite"
    )
    p.add_argument("relation", choices=RELATIONS + ("kernels", "all"))
    p.add_argument(
        "--max-dim",
        type=int,
        default=6,
        dest="max_dim",
        help="bound on 3g-3+n for relation suites (default 6)",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compact", parents=[common], help="closed-surface volume")
    p.add_argument("g", type=int)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(func=cmd_compact)

    p = sub.add_parser("table", parents=[common], help="export the volume table")
    p.add_argument("--max-dim", type=int, default=6, dest="max_dim")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser(
        "diag-zograf", parents=[common], help="large-genus ratio diagnostic"
    )
    p.add_argument("--gmax", type=int, default=5)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_diag_zograf)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"error: rejected invalid table data: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
