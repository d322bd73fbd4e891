"""Command-line interface: generate, solve, verify, bench.

Exit codes: 0 success, 2 validation error (including bad usage), 3 capacity
error (an enumeration budget or oracle cap refused the input), 1 anything
else.  JSON and CSV payloads go to stdout; diagnostics, including wall-clock
times, go to stderr so identical commands produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import decomp, oracle, semionline
from .adssched import solve_adssched
from .core import GenConfig, InstanceParams, LosInstance, Solution, generate
from .errors import CapacityError, LosError, ValidationError
from .io import (
    ADS_HEADER,
    LOSN_HEADER,
    load_ads,
    load_instance,
    load_solution,
    save_instance,
    serialize_ads,
    serialize_instance,
    solution_dict,
)
from .narrow import DEFAULT_WINDOW_BUDGET, solve_exact_narrow

ALGOS = ("exact-narrow", "brute", "strip2", "ptas", "semionline", "adssched")
SUITES = ("linearity", "ratio")
BUDGET_ENV = "LOS_WINDOW_BUDGET"


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational number: {text!r}") from exc


def _parse_extents(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"bad extents {text!r}") from exc


def _parse_seed_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return range(int(a), int(b) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError as exc:
        raise ValidationError(f"bad seed range {text!r} (want a..b)") from exc


def _window_budget() -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ValidationError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="losnet",
        description="Solvers for independent sets on line-of-sight grid networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance file")
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--extents", required=True, help="comma separated, one per axis")
    gen.add_argument("--omega", type=int, required=True)
    gen.add_argument("--density", required=True, help="cell occupancy probability")
    gen.add_argument("--weights", default="const:1", help="const:c or uniform:a:b")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", required=True)

    solve = sub.add_parser("solve", help="solve an instance file")
    solve.add_argument("algo", choices=ALGOS)
    solve.add_argument("file")
    solve.add_argument("--epsilon", help="rational, e.g. 0.5 or 1/2")
    solve.add_argument("--long-axis", type=int, default=None)
    solve.add_argument("--json", action="store_true", help="full report on stdout")
    solve.add_argument("--float", action="store_true", dest="with_float")
    solve.add_argument("--trace-phases", action="store_true")
    solve.add_argument("--threads", type=int, default=1)

    ver = sub.add_parser("verify", help="recheck a solution JSON against an instance")
    ver.add_argument("instance")
    ver.add_argument("solution")

    bench = sub.add_parser("bench", help="run a benchmark suite, CSV on stdout")
    bench.add_argument("--suite", required=True, choices=SUITES)
    bench.add_argument("--seeds", required=True, help="inclusive range a..b")
    bench.add_argument("-o", "--output", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args, argv)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except LosError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace, argv: list[str]) -> int:
    if args.command == "gen":
        return _cmd_gen(args)
    if args.command == "solve":
        return _cmd_solve(args, argv)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "bench":
        return _cmd_bench(args)
    raise ValidationError(f"unknown command {args.command!r}")


def _cmd_gen(args: argparse.Namespace) -> int:
    params = InstanceParams(args.d, _parse_extents(args.extents), args.omega)
    cfg = GenConfig(params, _parse_fraction(args.density), args.weights, args.seed)
    inst = generate(cfg)
    comments = [
        f"generated prng=splitmix64 seed={cfg.seed} density={cfg.density} "
        f"weights={cfg.weight_dist}"
    ]
    save_instance(args.output, inst, comments)
    print(f"wrote {args.output} ({len(inst)} vertices)", file=sys.stderr)
    return 0


def _sniff_header(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                return line
    raise ValidationError(f"{path}: empty file")


def _cmd_solve(args: argparse.Namespace, argv: list[str]) -> int:
    budget = _window_budget()
    epsilon = _parse_fraction(args.epsilon) if args.epsilon is not None else None
    if args.algo in ("ptas", "semionline") and epsilon is None:
        raise ValidationError(f"--epsilon is required for {args.algo}")
    header = _sniff_header(args.file)
    started = time.perf_counter()

    if args.algo == "adssched":
        if header != ADS_HEADER:
            raise ValidationError(
                f"adssched needs an .ads file (first line {ADS_HEADER!r})"
            )
        ads = load_ads(args.file)
        sol = solve_adssched(ads, budget=budget)
        report = oracle.verify_ads(ads, sol)
        digest = _digest(serialize_ads(ads))
        long_axis: int | None = None
    else:
        if header != LOSN_HEADER:
            raise ValidationError(
                f"{args.algo} needs a .losn file (first line {LOSN_HEADER!r})"
            )
        inst = load_instance(args.file)
        sol, long_axis = _run_algo(args, inst, epsilon, budget)
        report = oracle.verify(inst, sol)
        digest = _digest(serialize_instance(inst))
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    if not report.independent:
        raise RuntimeError(
            f"solver output failed verification: {report.violations}"
        )
    print(f"# wall_ms={elapsed_ms:.3f}", file=sys.stderr)
    if args.json:
        out = {
            "command": " ".join(argv),
            "digest": digest,
            "params": {
                "algo": args.algo,
                "epsilon": str(epsilon) if epsilon is not None else None,
                "long_axis": long_axis,
                "threads": args.threads,
                "window_budget": budget if budget is not None else DEFAULT_WINDOW_BUDGET,
            },
            "solution": solution_dict(sol, args.with_float),
        }
        print(json.dumps(out, indent=2))
    else:
        print(f"algorithm: {sol.algorithm}")
        print(f"weight: {sol.total_weight}")
        print(f"vertices: {len(sol.vertices)}")
    return 0


def _run_algo(
    args: argparse.Namespace,
    inst: LosInstance,
    epsilon: Fraction | None,
    budget: int | None,
) -> tuple[Solution, int | None]:
    from .core import default_long_axis

    long_axis = args.long_axis
    if long_axis is None and args.algo != "brute":
        long_axis = default_long_axis(inst.params)
    if args.algo == "exact-narrow":
        return solve_exact_narrow(inst, long_axis, budget), long_axis
    if args.algo == "brute":
        return oracle.brute_mis(inst), None
    if args.algo == "strip2":
        return (
            decomp.solve_strip2(inst, long_axis, budget, threads=args.threads),
            long_axis,
        )
    if args.algo == "ptas":
        assert epsilon is not None
        return (
            decomp.solve_ptas(inst, epsilon, long_axis, budget, threads=args.threads),
            long_axis,
        )
    if args.algo == "semionline":
        assert epsilon is not None
        on_phase = _phase_tracer() if args.trace_phases else None
        sol = semionline.solve_semionline(
            inst, epsilon, long_axis=long_axis, budget=budget, on_phase=on_phase
        )
        return sol, long_axis
    raise ValidationError(f"unknown algorithm {args.algo!r}")


def _phase_tracer():
    def trace(ph: semionline.PhaseState) -> None:
        line = json.dumps(
            {
                "j0": ph.j0,
                "r_star": ph.r,
                "weight": str(ph.current_weight),
                "lookahead_used": ph.lookahead_used,
            }
        )
        print(line, file=sys.stderr)

    return trace


def _digest(canonical_text: str) -> str:
    return "sha256:" + hashlib.sha256(canonical_text.encode("utf-8")).hexdigest()


def _cmd_verify(args: argparse.Namespace) -> int:
    sol = load_solution(args.solution)
    header = _sniff_header(args.instance)
    if header == ADS_HEADER:
        report = oracle.verify_ads(load_ads(args.instance), sol)
    elif header == LOSN_HEADER:
        report = oracle.verify(load_instance(args.instance), sol)
    else:
        raise ValidationError(f"{args.instance}: unrecognized header {header!r}")
    out = {
        "independent": report.independent,
        "weight_claimed": str(report.weight_claimed),
        "weight_recomputed": str(report.weight_recomputed),
        "violations": report.violations,
    }
    print(json.dumps(out, indent=2))
    return 0 if report.independent else 1


def _cmd_bench(args: argparse.Namespace) -> int:
    seeds = _parse_seed_range(args.seeds)
    budget = _window_budget()
    rows = ["n,k,omega,algo,weight,ratio_vs_exact,ms"]
    if args.suite == "linearity":
        rows.extend(_bench_linearity(seeds, budget))
    else:
        rows.extend(_bench_ratio(seeds, budget))
    text = "\n".join(rows) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def _bench_linearity(seeds: range, budget: int | None) -> list[str]:
    rows = []
    for seed in seeds:
        for n in (250, 500, 1000, 2000):
            params = InstanceParams(2, (n, 2), 3)
            inst = generate(GenConfig(params, Fraction(1, 2), "const:1", seed))
            t0 = time.perf_counter()
            sol = solve_exact_narrow(inst, 0, budget)
            ms = (time.perf_counter() - t0) * 1000.0
            rows.append(
                f"{n},2,3,exact-narrow,{sol.total_weight},1,{ms:.3f}"
            )
    return rows


def _bench_ratio(seeds: range, budget: int | None) -> list[str]:
    rows = []
    for seed in seeds:
        params = InstanceParams(2, (12, 3), 3)
        inst = generate(GenConfig(params, Fraction(3, 5), "uniform:1:5", seed))
        t0 = time.perf_counter()
        exact = solve_exact_narrow(inst, 0, budget)
        ms = (time.perf_counter() - t0) * 1000.0
        rows.append(f"12,3,3,exact-narrow,{exact.total_weight},1,{ms:.3f}")
        runs: list[tuple[str, Solution, float]] = []

        def timed(name, fn) -> None:
            t0 = time.perf_counter()
            sol = fn()
            runs.append((name, sol, (time.perf_counter() - t0) * 1000.0))

        timed("strip2", lambda: decomp.solve_strip2(inst, 0, budget))
        for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 4)):
            timed(f"ptas(e={eps})", lambda e=eps: decomp.solve_ptas(inst, e, 0, budget))
        for eps in (Fraction(1), Fraction(1, 2)):
            timed(
                f"semionline(e={eps})",
                lambda e=eps: semionline.solve_semionline(
                    inst, e, long_axis=0, budget=budget
                ),
            )
        for name, sol, ms in runs:
            ratio = (
                sol.total_weight / exact.total_weight
                if exact.total_weight
                else Fraction(1)
            )
            rows.append(f"12,3,3,{name},{sol.total_weight},{ratio},{ms:.3f}")
    return rows


if __name__ == "__main__":
    sys.exit(main())
