"""Command-line front end.

Exit codes: 0 success, 1 verification or search failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .admissible import AdmissibleNotFound, DivisorBoundError, build_divisor, find_admissible, get_profile
from .bigint import CyclicInt, cyclic_mul, from_hex
from .intmul import integer_multiply
from .trace import RunReport, Trace

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _profile(args):
    try:
        prof = get_profile(args.profile)
        return prof.with_text_overrides(args.set or [])
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _hex_width(n: int) -> int:
    return (n + 3) // 4


def _parse_residue(text: str, n: int) -> CyclicInt:
    try:
        value = from_hex(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if value.bit_length() > n:
        raise UsageError(f"{text} does not fit in n = {n} bits")
    return CyclicInt.of(value, n)


def cmd_mul_int(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    prof = _profile(args)
    us = [_parse_residue(x, args.n) for x in args.u]
    v = _parse_residue(args.v, args.n)
    trace = Trace()
    start = time.perf_counter()
    ws = integer_multiply(us, v, prof, depth_budget=args.depth, force_pipeline=args.force_pipeline, trace=trace)
    elapsed = time.perf_counter() - start
    hexes = [format(w.value, f"0{_hex_width(args.n)}x") for w in ws]
    if args.json:
        report = RunReport(
            command=list(args.argv),
            profile=prof.to_dict(),
            timings={"integer_multiply": elapsed},
            trace=trace.to_list(),
            fallbacks=trace.fallbacks,
            result=hexes,
        )
        print(report.to_json())
    else:
        for h in hexes:
            print(h)
        for note in trace.fallbacks:
            print(f"# fallback: {note}", file=sys.stderr)
    return EXIT_OK


def cmd_find_admissible(args) -> int:
    prof = _profile(args)
    start = time.perf_counter()
    try:
        t = find_admissible(args.n, args.p, prof)
        div = build_divisor(t, args.p, prof)
    except (AdmissibleNotFound, DivisorBoundError) as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = div.report()
    report["principal"] = div.omega_is_principal()
    report["seconds"] = round(time.perf_counter() - start, 3)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"N      = {t.N} = {' * '.join(map(str, t.q))}")
        print(f"lambda = {t.lam} = {t.lambda_factors}")
        print(f"sigma  = {report['sigma']}")
        print(f"alpha  = {div.alpha}  (phi(alpha) = {report['phi_alpha']}, m = N/alpha = {div.m})")
        print(f"r      = {div.r}  (ord_alpha p)")
        print(f"k      = {div.k}  (field components)")
        if div.ignored:
            print(f"ignored ell = {list(div.ignored)}")
        print(f"omega principal of order {t.order}: {report['principal']}")
    return EXIT_OK if report["principal"] else EXIT_FAIL


def cmd_verify(args) -> int:
    from .suites import SUITES

    checks = SUITES[args.suite](args.seed)
    failed = 0
    for name, ok, detail in checks:
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_bench(args) -> int:
    import random

    prof = _profile(args)
    rnd = random.Random(args.seed)
    rows = []
    for n in args.n:
        us = [CyclicInt.of(rnd.getrandbits(n), n) for _ in range(args.batch)]
        v = CyclicInt.of(rnd.getrandbits(n), n)
        trace = Trace()
        t0 = time.perf_counter()
        ws = integer_multiply(us, v, prof, depth_budget=args.depth, force_pipeline=True, trace=trace)
        t1 = time.perf_counter()
        ref = [cyclic_mul(u, v) for u in us]
        t2 = time.perf_counter()
        ints = trace.of_kind("int")
        polys = trace.of_kind("poly")
        rows.append(
            {
                "n": n,
                "pipeline_s": round(t1 - t0, 4),
                "basecase_s": round(t2 - t1, 4),
                "correct": ws == ref,
                "int_depth": trace.max_depth("int"),
                "poly_levels": 1 + max((r.depth for r in polys), default=-1),
                "int_calls": len(ints),
                "fallbacks": len(trace.fallbacks),
            }
        )
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        keys = list(rows[0])
        print("  ".join(f"{k:>11}" for k in keys))
        for row in rows:
            print("  ".join(f"{str(row[k]):>11}" for k in keys))
    return EXIT_OK if all(r["correct"] for r in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclomul", description="Cyclotomic-ring multiplication toolkit")
    parser.add_argument("--threads", type=int, default=1, help="worker hint (runs are single-threaded)")
    sub = parser.add_subparsers(dest="command", required=True)

    def profile_flags(p):
        p.add_argument("--profile", default="desk", choices=["desk", "paper"])
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a profile field")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("mul-int", help="multiply residues modulo 2^n - 1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", nargs="+", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--force-pipeline", action="store_true")
    p.add_argument("--depth", type=int, default=1)
    profile_flags(p)
    p.set_defaults(func=cmd_mul_int)

    p = sub.add_parser("find-admissible", help="search an admissible length and build its divisor")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    profile_flags(p)
    p.set_defaults(func=cmd_find_admissible)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all", choices=["paper-examples", "properties", "all"])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the integer pipeline against the basecase")
    p.add_argument("--n", type=int, nargs="+", default=[2**12, 2**14, 2**16])
    p.add_argument("--batch", type=int, default=1)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    profile_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.argv = argv
    if args.threads < 1:
        print("--threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    os.environ.setdefault("OMP_NUM_THREADS", str(args.threads))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
