"""Acceptance suite: one test per release criterion, exact tolerances.

Each test prints a single ``ACCEPTANCE <n> PASS`` line on success; a failed
assertion marks the criterion failed.  Oracle-backed checks use exact
rational comparisons throughout; no tolerances are involved anywhere.

Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import itertools
import json
import statistics
import time
from fractions import Fraction

from losnet import (
    AdsInstance,
    GenConfig,
    InstanceParams,
    brute_adssched,
    brute_mis,
    brute_windows,
    enumerate_windows,
    generate,
    is_independent,
    max_lookahead,
    serialize_instance,
    solution_to_json,
    solve_adssched,
    solve_exact_narrow,
    solve_ptas,
    solve_semionline,
    solve_strip2,
    verify,
)
from losnet.cli import main as cli_main
from losnet.rng import SplitMix64

_POOLS: dict = {}


def _announce(num: int, text: str) -> None:
    print(f"\nACCEPTANCE {num} PASS: {text}")


def d2_pool() -> list:
    """Oracle-solvable d=2 pool shared by criteria 1, 4, and 5."""
    if "d2" not in _POOLS:
        pool = []
        for seed, n, k, omega, dens, dist in itertools.product(
            range(1, 7),
            (8, 12),
            (1, 2, 3),
            (2, 3, 4),
            (Fraction(3, 10), Fraction(3, 5), Fraction(1)),
            ("const:1", "uniform:1:5"),
        ):
            cfg = GenConfig(InstanceParams(2, (n, k), omega), dens, dist, seed)
            inst = generate(cfg)
            if len(inst) > 24:
                continue
            pool.append((inst, brute_mis(inst).total_weight))
        _POOLS["d2"] = pool
    return _POOLS["d2"]


def d3_pool() -> list:
    """Oracle-solvable d=3 pool shared by criteria 2, 4, and 5."""
    if "d3" not in _POOLS:
        pool = []
        for seed, omega, dens in itertools.product(
            range(1, 36), (2, 3), (Fraction(3, 10), Fraction(1, 2))
        ):
            cfg = GenConfig(
                InstanceParams(3, (10, 2, 2), omega), dens, "uniform:1:5", seed
            )
            inst = generate(cfg)
            if len(inst) > 24:
                continue
            pool.append((inst, brute_mis(inst).total_weight))
        _POOLS["d3"] = pool
    return _POOLS["d3"]


def test_criterion_1_dp_exactness_d2():
    started = time.perf_counter()
    pool = d2_pool()
    assert len(pool) >= 500, f"pool holds only {len(pool)} instances"
    for inst, opt in pool:
        sol = solve_exact_narrow(inst, 0)
        assert sol.total_weight == opt, inst
        assert is_independent(inst, sol.vertices)
    elapsed = time.perf_counter() - started
    assert elapsed < 60, f"criterion 1 took {elapsed:.1f}s"
    _announce(
        1,
        f"DP weight equals the exhaustive optimum on {len(pool)} "
        f"d=2 instances ({elapsed:.1f}s)",
    )


def test_criterion_2_dp_exactness_d3():
    pool = d3_pool()
    assert len(pool) >= 100, f"pool holds only {len(pool)} instances"
    for inst, opt in pool:
        sol = solve_exact_narrow(inst, 0)
        assert sol.total_weight == opt
        assert is_independent(inst, sol.vertices)
    _announce(2, f"DP weight equals the exhaustive optimum on {len(pool)} d=3 instances")


def test_criterion_3_window_enumeration_matches_oracle():
    universe_1d = [(i,) for i in range(1, 5)]
    universe_2d = [(a, b) for a in range(1, 4) for b in range(1, 4)]
    arrangements = []
    for universe in (universe_1d, universe_2d):
        for size in (1, 2, 3):
            arrangements.extend(itertools.combinations(universe, size))
    checked = 0
    for rows in arrangements:
        for omega in (2, 3, 4):
            expected = brute_windows(rows, omega)
            got = enumerate_windows(rows, omega)
            assert set(got) == expected, (rows, omega)
            assert len(got) == len(expected)
            checked += 1
    # the two derived counts called out for adjacent-row pairs
    assert len(enumerate_windows(((1,), (2,)), 2)) == 7
    assert len(enumerate_windows(((1,), (2,)), 3)) == 13
    _announce(
        3,
        f"window enumeration equals the brute filter on {checked} "
        "(arrangement, omega) combinations, including counts 7 and 13",
    )


def test_criterion_4_strip2_ratio_and_independence():
    count = 0
    for inst, opt in d2_pool() + d3_pool():
        sol = solve_strip2(inst, 0)
        assert 2 * sol.total_weight >= opt, inst
        report = verify(inst, sol)
        assert report.independent, report.violations
        count += 1
    large = 0
    for seed in range(50):
        cfg = GenConfig(
            InstanceParams(2, (500, 4), 3), Fraction(2, 5), "uniform:1:5", seed
        )
        inst = generate(cfg)
        sol = solve_strip2(inst, 0)
        assert is_independent(inst, sol.vertices)
        large += 1
    _announce(
        4,
        f"strip union is within factor 2 on {count} oracle instances and "
        f"independent on {large} n=500 instances",
    )


def test_criterion_5_ptas_ratios():
    epsilons = (Fraction(1), Fraction(1, 2), Fraction(1, 4))
    d2 = d2_pool()
    for inst, opt in d2:
        for eps in epsilons:
            sol = solve_ptas(inst, eps, 0)
            assert sol.total_weight * (1 + eps) >= opt, (inst, eps)
    # Two cut axes at d=3: the per-axis slack eps' satisfies
    # (1+eps')^2 = 1+eps exactly, so the compound bound is the same
    # exact rational comparison.
    d3 = d3_pool()
    for inst, opt in d3:
        for eps in epsilons:
            sol = solve_ptas(inst, eps, 0)
            assert sol.total_weight * (1 + eps) >= opt, (inst, eps)
    _announce(
        5,
        f"shifted-block solutions meet the 1+eps bound for eps in {{1, 1/2, 1/4}} "
        f"on {len(d2)} d=2 and {len(d3)} d=3 instances",
    )


def test_criterion_6_semionline():
    count = 0
    for seed, k, omega, n in itertools.product(
        range(1, 27), (1, 2), (2, 3), (20, 40)
    ):
        cfg = GenConfig(InstanceParams(2, (n, k), omega), Fraction(1, 2), "const:1", seed)
        inst = generate(cfg)
        exact = solve_exact_narrow(inst, 0).total_weight
        for eps in (Fraction(1), Fraction(1, 2)):
            sol = solve_semionline(inst, eps, long_axis=0)
            assert sol.total_weight * (1 + eps) >= exact, (seed, k, omega, n, eps)
            assert is_independent(inst, sol.vertices)
            assert sol.meta["lookahead_max_used"] <= max_lookahead(k, 2, eps, omega)
        count += 1
    assert count >= 200, f"only {count} unit-weight instances checked"
    # extremes terminate with finitely many phases
    empty = generate(
        GenConfig(InstanceParams(2, (40, 2), 3), Fraction(0), "const:1", 1)
    )
    sol = solve_semionline(empty, Fraction(1), long_axis=0)
    assert sol.meta["phases"] == 40 and sol.total_weight == 0
    full = generate(
        GenConfig(InstanceParams(2, (40, 2), 3), Fraction(1), "const:1", 1)
    )
    sol = solve_semionline(full, Fraction(1), long_axis=0)
    assert sol.meta["phases"] >= 1
    assert is_independent(full, sol.vertices)
    _announce(
        6,
        f"semi-online meets the 1+eps bound with honest look-ahead on "
        f"{count} unit-weight instances plus both occupancy extremes",
    )


def test_criterion_7_adssched_exactness():
    checked = 0
    for bits in range(256):
        avail = tuple(
            tuple((bits >> (c * 4 + t)) & 1 for t in range(4)) for c in range(2)
        )
        for omega in (2, 3):
            for cap in (1, 2):
                ads = AdsInstance(2, 4, omega, cap, avail)
                assert (
                    solve_adssched(ads).total_weight
                    == brute_adssched(ads).total_weight
                ), (avail, omega, cap)
                checked += 1
    rng = SplitMix64(99)
    randoms = 0
    for _ in range(200):
        avail = tuple(
            tuple(rng.below(2) for _ in range(6)) for _ in range(3)
        )
        omega = 2 + rng.below(2)
        cap = 1 + rng.below(2)
        ads = AdsInstance(3, 6, omega, cap, avail)
        assert solve_adssched(ads).total_weight == brute_adssched(ads).total_weight
        randoms += 1
    _announce(
        7,
        f"schedule DP equals the exhaustive optimum on all {checked} "
        f"2x4 matrices and {randoms} random 3x6 instances",
    )


def test_criterion_8_runtime_shape():
    started = time.perf_counter()

    def solve_time(n: int, seed: int) -> float:
        # per-seed time is the best of two runs, which damps scheduler noise
        cfg = GenConfig(InstanceParams(2, (n, 2), 3), Fraction(1, 2), "const:1", seed)
        inst = generate(cfg)
        best = float("inf")
        for _ in range(2):
            t0 = time.perf_counter()
            solve_exact_narrow(inst, 0)
            best = min(best, time.perf_counter() - t0)
        return best

    solve_time(1000, 0)  # warm-up
    t1000 = [solve_time(1000, s) for s in range(5)]
    t2000 = [solve_time(2000, s) for s in range(5)]
    ratio = statistics.median(t2000) / statistics.median(t1000)
    total = time.perf_counter() - started
    assert total < 120, f"criterion 8 took {total:.1f}s"
    assert 1.5 <= ratio <= 3.0, f"doubling ratio {ratio:.2f} outside [1.5, 3.0]"
    _announce(
        8,
        f"doubling n scales solve time by {ratio:.2f} (within [1.5, 3.0], "
        f"{total:.1f}s total)",
    )


def test_criterion_9_determinism(tmp_path, capsys):
    # library level: byte-identical JSON per solver on the same input
    cfg = GenConfig(InstanceParams(2, (14, 3), 3), Fraction(1, 2), "uniform:1:5", 7)
    inst = generate(cfg)
    small = generate(
        GenConfig(InstanceParams(2, (8, 2), 3), Fraction(1, 2), "const:1", 3)
    )
    runs = {
        "exact-narrow": lambda: solve_exact_narrow(inst, 0),
        "brute": lambda: brute_mis(small),
        "strip2": lambda: solve_strip2(inst, 0),
        "ptas": lambda: solve_ptas(inst, Fraction(1, 2), 0),
        "semionline": lambda: solve_semionline(inst, Fraction(1), long_axis=0),
        "adssched": lambda: solve_adssched(
            AdsInstance(2, 6, 2, 1, ((1,) * 6, (0, 1, 1, 0, 1, 1)))
        ),
    }
    for name, fn in runs.items():
        assert solution_to_json(fn()) == solution_to_json(fn()), name

    # CLI level: identical command, byte-identical stdout
    path = tmp_path / "d.losn"
    assert (
        cli_main(
            ["gen", "--d", "2", "--extents", "12,3", "--omega", "3",
             "--density", "0.5", "--seed", "7", "-o", str(path)]
        )
        == 0
    )
    capsys.readouterr()
    outs = []
    for _ in range(2):
        assert cli_main(["solve", "exact-narrow", str(path), "--json"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    report = json.loads(outs[0])
    assert list(report) == ["command", "digest", "params", "solution"]

    # generator level: seed-stable golden file
    golden_cfg = GenConfig(InstanceParams(2, (6, 2), 3), Fraction(1, 2), "const:1", 7)
    golden = (
        "losn v1\n"
        "d=2 omega=3 extents=6,2\n"
        "v 1 1 1\n"
        "v 1 2 1\n"
        "v 3 1 1\n"
        "v 3 2 1\n"
        "v 4 1 1\n"
        "v 4 2 1\n"
        "v 5 1 1\n"
        "v 5 2 1\n"
        "v 6 1 1\n"
    )
    assert serialize_instance(generate(golden_cfg)) == golden
    _announce(9, "all solvers and the generator are byte-stable across reruns")
