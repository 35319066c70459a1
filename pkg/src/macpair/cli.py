"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure, 2 usage error, 3 degenerate
numeric specialization.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import shutil
import sys
from fractions import Fraction
from pathlib import Path

from .exactfield import DegenerateSpecialization, NumericField, make_field
from .macdonald import BasisCache, InternalInconsistency, pairing_via_operators, pairing_via_spectrum
from .partitions import ORDERS, format_partition, parse_partition
from .symfunc import SymPoly, e_product_E, render_sympoly, sympoly_to_json
from .verify import SUITES, RetryBudgetExhausted, SuiteConfig, run_suite, sample_parameters

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3
BASES = ("m", "E", "P", "I", "N")


class UsageError(Exception):
    pass


def cache_root(flag) -> Path:
    if flag:
        return Path(flag)
    return Path(os.environ.get("MACD_CACHE") or ".macd-cache")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _partition_arg(text: str):
    try:
        return parse_partition(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def _add_field_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("symbolic", "numeric"))
    p.add_argument("--q", type=_fraction, help="numeric value of q (rational, e.g. 3/7)")
    p.add_argument("--t", type=_fraction, help="numeric value of t")
    p.add_argument("--seed", type=int, help="sample (q, t) from this seed in numeric mode")
    p.add_argument("--order", choices=sorted(ORDERS), default="lex", help="tie-break order for equal sizes")


def resolve_mode(args) -> str:
    explicit = args.q is not None or args.t is not None
    if explicit and args.seed is not None and args.mode != "symbolic":
        raise UsageError("--seed and --q/--t are mutually exclusive")
    if args.mode == "symbolic":
        if explicit or args.seed is not None:
            raise UsageError("--q/--t/--seed only apply in numeric mode")
        return "symbolic"
    if explicit and (args.q is None or args.t is None):
        raise UsageError("give both --q and --t")
    if args.mode == "numeric" and not explicit and args.seed is None:
        raise UsageError("numeric mode needs --q and --t, or --seed")
    return "numeric" if (explicit or args.seed is not None) else "symbolic"


def resolve_field(args, max_size: int):
    mode = resolve_mode(args)
    if mode == "symbolic":
        return make_field("symbolic")
    if args.q is not None:
        return NumericField(args.q, args.t)
    return NumericField(*sample_parameters(random.Random(args.seed), max_size))


def _check_partition(lam, n: int) -> None:
    if len(lam) > n:
        raise UsageError(f"partition {format_partition(lam)} has more than {n} parts")


def build_object(basis: str, lam, cache: BasisCache) -> SymPoly:
    if basis == "m":
        return SymPoly.monomial(lam, cache.n, cache.field)
    if basis == "E":
        return e_product_E(lam, cache.n, cache.field)
    if basis == "P":
        return cache.P(lam)
    if basis == "I":
        return cache.I(lam)
    return cache.N(lam)


def parse_operand(text: str):
    basis, sep, rest = text.partition(":")
    if not sep or basis not in BASES:
        raise UsageError(f"operand {text!r} must look like basis:partition with basis in {', '.join(BASES)}")
    try:
        return basis, parse_partition(rest)
    except ValueError as err:
        raise UsageError(str(err))


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=1) + "\n")


# -- commands -------------------------------------------------------------------

def cmd_poly(args) -> int:
    _check_partition(args.part, args.n)
    field = resolve_field(args, sum(args.part))
    cache = BasisCache(args.n, field, args.order)
    poly = build_object(args.command, args.part, cache)
    if args.json:
        doc = {"kind": args.command, "partition": list(args.part), "field": field.describe()}
        doc.update(sympoly_to_json(poly, args.order))
        _emit(doc)
    else:
        print(render_sympoly(poly, args.order))
    return EXIT_OK


def cmd_pair(args) -> int:
    g_basis, g_lam = parse_operand(args.g)
    f_basis, f_lam = parse_operand(args.f)
    _check_partition(g_lam, args.n)
    _check_partition(f_lam, args.n)
    field = resolve_field(args, sum(g_lam) + sum(f_lam))
    cache = BasisCache(args.n, field, args.order)
    g = build_object(g_basis, g_lam, cache)
    f = build_object(f_basis, f_lam, cache)
    a = pairing_via_operators(g, f, cache)
    b = pairing_via_spectrum(g, f, cache)
    if a != b:
        print(f"routes disagree: operators {field.render(a)}, spectrum {field.render(b)}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        _emit({"g": args.g, "f": args.f, "n": args.n, "field": field.describe(),
               "value": field.to_json(a), "text": field.render(a)})
    else:
        print(field.render(a))
    return EXIT_OK


def _suite_list(text: str):
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        raise UsageError("empty --suite")
    out = []
    for s in names:
        if s == "all":
            out.extend(x for x in SUITES if x not in out)
        elif s in SUITES:
            if s not in out:
                out.append(s)
        else:
            raise UsageError(f"unknown suite {s!r}; choose from all, {', '.join(SUITES)}")
    return out


def cmd_verify(args) -> int:
    suites = _suite_list(args.suite)
    if args.max_size < 0:
        raise UsageError("--max-size must be >= 0")
    field = resolve_field(args, args.max_size)
    mode = field.mode
    q0 = getattr(field, "q0", None)
    t0 = getattr(field, "t0", None)
    cache = BasisCache(args.n, field, args.order)
    root = None if args.no_cache else cache_root(args.cache_dir)
    if root is not None:
        cache.load(root)
    reports = []
    for name in suites:
        cfg = SuiteConfig(name, args.n, args.max_size, mode, q0, t0, args.seed, args.order, args.pairs)
        try:
            reports.append(run_suite(cfg, cache))
        except RetryBudgetExhausted as err:
            print(str(err), file=sys.stderr)
            return EXIT_DEGENERATE
        except DegenerateSpecialization as err:
            print(f"{name}: degenerate specialization: {err}", file=sys.stderr)
            return EXIT_DEGENERATE
    if root is not None:
        cache.save(root)
    if args.json:
        _emit([r.to_json() for r in reports])
    else:
        for r in reports:
            print(r.summary())
            for c in r.cases:
                if c.status == "fail":
                    detail = "; ".join(f"{k}={v}" for k, v in (c.witness or {}).items())
                    print(f"  FAIL {c.label}: {detail}")
                elif c.status == "degenerate-resampled":
                    print(f"  RESAMPLED {c.label}")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _cache_dirs(root: Path):
    if not root.is_dir():
        return []
    return sorted(p for p in root.iterdir() if p.is_dir() and (p / "meta.json").is_file())


def _count_files(d: Path) -> dict:
    counts = {"P": 0, "I": 0, "chain": 0, "norm": 0}
    for p in d.glob("*.json"):
        if p.name.startswith("P["):
            counts["P"] += 1
        elif p.name.startswith("I["):
            counts["I"] += 1
        elif p.name.startswith("chain["):
            counts["chain"] += 1
        elif p.name == "norms.json":
            counts["norm"] += len(json.loads(p.read_text())["norms"])
    return counts


def _fmt_counts(counts: dict) -> str:
    return ", ".join(f"{k}: {v}" for k, v in counts.items())


def cmd_cache(args) -> int:
    root = cache_root(args.cache_dir)
    if args.action == "stat":
        total = {"P": 0, "I": 0, "chain": 0, "norm": 0}
        for d in _cache_dirs(root):
            counts = _count_files(d)
            print(f"{d.name}: {_fmt_counts(counts)}")
            for k, v in counts.items():
                total[k] += v
        print(f"total: {_fmt_counts(total)}")
        return EXIT_OK
    if args.action == "clear":
        dirs = _cache_dirs(root)
        for d in dirs:
            shutil.rmtree(d)
        print(f"removed {len(dirs)} cache director{'y' if len(dirs) == 1 else 'ies'} under {root}")
        return EXIT_OK
    if args.n is None or args.max_size is None:
        raise UsageError("cache build needs --n and --max-size")
    field = resolve_field(args, args.max_size)
    cache = BasisCache(args.n, field, args.order)
    loaded = cache.load(root)
    cache.build(args.max_size)
    cache.save(root)
    wanted = len(cache.partitions(args.max_size))
    print(f"{cache.directory(root)}")
    for kind, store in (("P", cache.P_cache), ("I", cache.I_cache), ("chain", cache.chain_cache),
                        ("norm", cache.norm_cache)):
        hit = min(loaded[kind], wanted)
        print(f"{kind}: {wanted} ({hit} hit, {wanted - hit} computed), {len(store)} stored")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="macpair", description="Exact Macdonald and interpolation polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind, text in (("P", "Macdonald polynomial P"), ("I", "interpolation polynomial I"),
                       ("N", "normalized P / P(0^)")):
        p = sub.add_parser(kind, help=f"print the {text} in the monomial basis")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--part", type=_partition_arg, required=True, help='e.g. "2,1" or "[]"')
        p.add_argument("--json", action="store_true")
        _add_field_flags(p)
        p.set_defaults(func=cmd_poly)

    p = sub.add_parser("pair", help="Fourier pairing <g, f>")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("g", help="basis:partition, basis one of m, E, P, I, N")
    p.add_argument("f")
    p.add_argument("--json", action="store_true")
    _add_field_flags(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", required=True, help=f"comma list from all, {', '.join(SUITES)}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--pairs", type=int, default=50, help="random samples in symmetry/adjoint")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cache-dir")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the on-disk cache")
    _add_field_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", help="manage the on-disk cache")
    p.add_argument("action", choices=("build", "clear", "stat"))
    p.add_argument("--n", type=int)
    p.add_argument("--max-size", type=int)
    p.add_argument("--cache-dir")
    _add_field_flags(p)
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("--n must be >= 1")
    if getattr(args, "no_cache", False) and args.cache_dir:
        parser.error("--no-cache and --cache-dir are mutually exclusive")
    try:
        return args.func(args)
    except UsageError as err:
        parser.error(str(err))
    except DegenerateSpecialization as err:
        print(f"degenerate specialization: {err}", file=sys.stderr)
        return EXIT_DEGENERATE
    except InternalInconsistency as err:
        print(f"internal inconsistency: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
