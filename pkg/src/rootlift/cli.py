"""Command-line front end.

Machine-readable output goes to stdout as JSON Lines (one summary record
per invocation; scans additionally stream one record per emitted row) and
a short human summary goes to stderr.  Exit codes: 0 success or proven,
1 a verification came back negative, 2 usage or domain error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from rootlift import analytic, arith, characters, counts, primroot

CHECKPOINT_DIR_ENV = "ROOTLIFT_CHECKPOINT_DIR"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _emit(command: str, inputs: dict, result, started: float) -> None:
    record = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "elapsed_ms": round((time.perf_counter() - started) * 1000.0, 3),
    }
    print(json.dumps(record))


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _context(p: int) -> primroot.PrimeContext:
    return primroot.PrimeContext.create(p)


def cmd_gp(args) -> int:
    started = time.perf_counter()
    ctx = _context(args.p)
    g = primroot.least_primitive_root(ctx)
    _emit("gp", {"p": args.p}, {"p": args.p, "g": g}, started)
    _note(f"g({args.p}) = {g}")
    return EXIT_OK


def cmd_hp(args) -> int:
    started = time.perf_counter()
    ctx = _context(args.p)
    g = primroot.least_primitive_root(ctx)
    h = primroot.least_primitive_root_mod_p2(ctx)
    result = {"p": args.p, "g": g, "h": h, "is_exception": g != h}
    _emit("hp", {"p": args.p}, result, started)
    _note(f"g({args.p}) = {g}, h({args.p}) = {h}"
          + ("  <-- exception" if g != h else ""))
    return EXIT_OK


def _resolve_checkpoint(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(CHECKPOINT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def cmd_scan(args) -> int:
    started = time.perf_counter()
    emit_all = args.emit == "all"

    def stream(rec: primroot.ScanRecord) -> None:
        if emit_all or rec.is_exception:
            print(json.dumps({
                "p": rec.p, "g": rec.g, "h": rec.h,
                "is_exception": rec.is_exception,
            }))

    records = primroot.scan(
        args.lo,
        args.hi,
        checkpoint=_resolve_checkpoint(args.checkpoint),
        workers=args.workers,
        csv_path=args.csv,
        emit_all=emit_all,
        chunk_size=args.chunk_size,
        row_hook=stream,
    )
    exceptions = [r for r in records if r.is_exception]
    result = {
        "primes_scanned": len(records),
        "exceptions": [
            {"p": r.p, "g": r.g, "h": r.h} for r in exceptions
        ],
    }
    _emit("scan", {
        "lo": args.lo, "hi": args.hi, "workers": args.workers,
        "emit": args.emit, "checkpoint": args.checkpoint, "csv": args.csv,
    }, result, started)
    _note(f"scanned {len(records)} primes in [{args.lo}, {args.hi}]: "
          f"{len(exceptions)} exception(s)")
    return EXIT_OK


def cmd_count(args) -> int:
    started = time.perf_counter()
    ctx = _context(args.p)
    params = counts.CountParams.create(ctx, args.X, args.z)
    n1 = counts.count_rough_primitive_roots(params)
    n2 = counts.count_rough_power_residues(params)
    n_coprime = counts.count_coprime_primitive_roots(args.X, args.u, ctx)

    bounds: dict = {}
    try:
        upper = counts.power_residue_upper_bound(args.p, args.X, args.eps, args.z)
        bounds["power_residue_upper"] = upper
        bounds["power_residue_margin"] = upper - n2
    except ValueError as err:
        bounds["power_residue_upper"] = None
        bounds["note"] = str(err)
    plan = characters.SievePlan.create(ctx, ctx.p - 1)
    lower = counts.primitive_root_lower_bound(
        ctx, args.X, args.u, plan, analytic.pv_constant(args.p)
    )
    bounds["primitive_root_lower"] = lower
    bounds["primitive_root_margin"] = n_coprime - lower

    result = {"N1": n1, "N2": n2, "N": n_coprime, "bounds": bounds}
    _emit("count", {
        "p": args.p, "X": args.X, "z": args.z, "u": args.u, "eps": args.eps,
    }, result, started)
    _note(f"p={args.p} X={args.X:g}: N1={n1} N2={n2} N={n_coprime}")
    return EXIT_OK


def _check_pv(args) -> counts.CheckReport:
    if args.p is not None:
        ps = [args.p]
    else:
        ps = [q for q in arith.sieve_primes(args.pmax) if q >= args.pmin]
    if not ps:
        raise ValueError("no primes in the requested range")
    falsifications = 0
    worst = (0.0, None)
    tested = 0
    for p in ps:
        for variant in ("frolenkov_sound", "lapkova"):
            rep = characters.certify_pv(p, variant, q0=args.q0)
            tested += rep.characters_tested
            if rep.max_ratio >= 1.0:
                falsifications += 1
            if rep.max_ratio > worst[0]:
                worst = (rep.max_ratio, rep)
    extremal = worst[1].to_record() if worst[1] else {}
    from rootlift.report import CheckReport

    return CheckReport(
        lemma="pv",
        parameters={"primes": len(ps), "q0": args.q0},
        cases_tested=tested,
        falsifications=falsifications,
        max_ratio=worst[0],
        extremal=extremal,
    )


def _check_quadruple(args):
    from rootlift.report import CheckReport

    falsifications = 0
    cases = 0
    worst = (0.0, {})
    for p in arith.sieve_primes(args.pmax):
        if p == 2:
            continue
        rep = counts.check_quadruple_bound(p, subsets=args.subsets, seed=args.seed)
        falsifications += rep.falsifications
        cases += rep.cases_tested
        if rep.max_ratio > worst[0]:
            worst = (rep.max_ratio, {"p": p, **rep.extremal})
    return CheckReport(
        lemma="quadruple",
        parameters={"pmax": args.pmax, "subsets": args.subsets, "seed": args.seed},
        cases_tested=cases,
        falsifications=falsifications,
        max_ratio=worst[0],
        extremal=worst[1],
    )


def cmd_check(args) -> int:
    started = time.perf_counter()
    if args.lemma == "pv":
        report = _check_pv(args)
    elif args.lemma == "sieve":
        report = characters.check_sieve_inequality(args.pmax)
    elif args.lemma == "quadruple":
        report = _check_quadruple(args)
    elif args.lemma == "tau":
        report = counts.check_tau_bound(args.nmax, args.z, args.eps)
    elif args.lemma == "rs":
        report = analytic.check_totient_bound(args.nmax)
    else:  # robin
        report = analytic.check_omega_bound(args.nmax)
    _emit("check", {"lemma": args.lemma}, report.to_record(), started)
    _note(f"check {args.lemma}: {report.cases_tested} cases, "
          f"{report.falsifications} falsification(s), "
          f"max ratio {report.max_ratio:.6f}")
    return EXIT_OK if report.falsifications == 0 else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    started = time.perf_counter()
    result = analytic.verify_exponent_bound(
        args.alpha,
        args.p_threshold,
        include_omega14=(args.cases == "with-omega14"),
    )
    for rep in result.reports:
        print(json.dumps({"case": rep.to_record()}))
    _emit("verify", {
        "alpha": args.alpha, "p_threshold": args.p_threshold, "cases": args.cases,
    }, result.to_record(), started)
    verdict = "proven" if result.proven else "not proven"
    _note(f"h(p) < p^{args.alpha} for p >= {args.p_threshold:g}: {verdict}")
    if not result.proven and result.failing is not None:
        f = result.failing
        _note(f"  failing case: omega={f.omega} ({f.omega_flag}), s={f.s}, "
              f"p={f.p:g}, lhs={f.lhs:.6g}, rhs={f.rhs:.6g}")
    return EXIT_OK if result.proven else EXIT_NEGATIVE


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootlift",
        description="Least primitive roots modulo p and p^2: computation, "
                    "scanning, and explicit bound verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gp", help="least primitive root mod p")
    sp.add_argument("p", type=int)
    sp.set_defaults(func=cmd_gp)

    sp = sub.add_parser("hp", help="least primitive roots mod p and p^2")
    sp.add_argument("p", type=int)
    sp.set_defaults(func=cmd_hp)

    sp = sub.add_parser("scan", help="scan a prime range for g(p) != h(p)")
    sp.add_argument("lo", type=int)
    sp.add_argument("hi", type=int)
    sp.add_argument("--checkpoint", help="checkpoint file; relative paths "
                    f"resolve under ${CHECKPOINT_DIR_ENV} when that is set")
    sp.add_argument("--csv", help="CSV output (p,g,h,is_exception); required "
                    "with --checkpoint")
    sp.add_argument("--workers", type=_positive_int,
                    default=os.cpu_count() or 1)
    sp.add_argument("--emit", choices=("exceptions", "all"),
                    default="exceptions")
    sp.add_argument("--chunk-size", type=_positive_int,
                    default=primroot.DEFAULT_CHUNK)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("count", help="exact sieved counts and their bounds")
    sp.add_argument("p", type=int)
    sp.add_argument("X", type=float)
    sp.add_argument("z", type=float)
    sp.add_argument("u", type=int)
    sp.add_argument("--eps", type=float, default=0.25)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("check", help="brute-force verification sweeps")
    sp.add_argument("lemma",
                    choices=("pv", "sieve", "quadruple", "tau", "rs", "robin"))
    sp.add_argument("--p", type=int, help="single prime (pv)")
    sp.add_argument("--pmin", type=int, default=1201)
    sp.add_argument("--pmax", type=int, default=None)
    sp.add_argument("--q0", type=float, default=1200.0)
    sp.add_argument("--subsets", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--nmax", type=int, default=10**6)
    sp.add_argument("--z", type=float, default=16.0)
    sp.add_argument("--eps", type=float, default=0.25)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("verify", help="run the case analysis for h(p) < p^alpha")
    sp.add_argument("alpha", type=float)
    sp.add_argument("p_threshold", type=float)
    sp.add_argument("--cases", choices=("default", "with-omega14"),
                    default="default")
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.pmax is None:
        args.pmax = {"sieve": 200, "quadruple": 500, "pv": 1301}.get(args.lemma, 200)
    try:
        return args.func(args)
    except (ValueError, OverflowError, ArithmeticError) as err:
        _note(f"error: {err}")
        return EXIT_USAGE
    except OSError as err:
        _note(f"i/o error: {err}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
