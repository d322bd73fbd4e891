"""Solvers for weighted independent sets on line-of-sight grid networks.

The package provides:

* an exact dynamic program over feasible windows for narrow instances,
* an odd/even strip 2-approximation for any dimension,
* a shifted-block (1+epsilon) scheme for any dimension,
* a phase-based semi-online (1+epsilon) solver with bounded look-ahead,
* an airing-schedule variant (per-client gaps, per-slot capacity),
* brute-force oracles and an exact solution verifier,
* deterministic instance generation and line-oriented file formats.

All weights are exact rationals; all solvers are deterministic.
"""

from .adssched import AdsInstance, solve_adssched
from .core import (
    Coords,
    GenConfig,
    InstanceParams,
    LosInstance,
    Solution,
    Vertex,
    are_adjacent,
    default_long_axis,
    generate,
    is_independent,
    set_weight,
    shares_line_of_sight,
)
from .decomp import (
    BlockDecomposition,
    StripIndex,
    make_blocks,
    parity_cut,
    ptas_shift_count,
    solve_ptas,
    solve_strip2,
    strip_of,
)
from .errors import CapacityError, LosError, UnknownCoordinateError, ValidationError
from .io import (
    load_ads,
    load_instance,
    load_solution,
    parse_ads,
    parse_instance,
    save_instance,
    serialize_ads,
    serialize_instance,
    solution_to_json,
)
from .narrow import (
    DEFAULT_WINDOW_BUDGET,
    FeasibleWindow,
    normalize_rows,
    NarrowArray,
    NarrowDp,
    array_sum,
    build_array,
    consistent,
    enumerate_windows,
    solve_exact_narrow,
    solve_mis_narrow,
    successors,
)
from .oracle import (
    VerifyReport,
    brute_adssched,
    brute_mis,
    brute_windows,
    exhaustive_mis,
    verify,
    verify_ads,
)
from .semionline import (
    ColumnStream,
    FileColumnStream,
    PhaseState,
    max_lookahead,
    run_phase,
    solve_semionline,
)

__version__ = "0.1.0"

__all__ = [
    "AdsInstance",
    "BlockDecomposition",
    "CapacityError",
    "ColumnStream",
    "Coords",
    "DEFAULT_WINDOW_BUDGET",
    "FeasibleWindow",
    "FileColumnStream",
    "GenConfig",
    "InstanceParams",
    "LosError",
    "LosInstance",
    "NarrowArray",
    "NarrowDp",
    "PhaseState",
    "Solution",
    "StripIndex",
    "UnknownCoordinateError",
    "ValidationError",
    "Vertex",
    "VerifyReport",
    "are_adjacent",
    "array_sum",
    "brute_adssched",
    "brute_mis",
    "brute_windows",
    "build_array",
    "consistent",
    "default_long_axis",
    "enumerate_windows",
    "exhaustive_mis",
    "generate",
    "is_independent",
    "load_ads",
    "load_instance",
    "load_solution",
    "make_blocks",
    "max_lookahead",
    "normalize_rows",
    "parity_cut",
    "parse_ads",
    "parse_instance",
    "ptas_shift_count",
    "run_phase",
    "save_instance",
    "serialize_ads",
    "serialize_instance",
    "set_weight",
    "shares_line_of_sight",
    "solution_to_json",
    "solve_adssched",
    "solve_exact_narrow",
    "solve_mis_narrow",
    "solve_ptas",
    "solve_semionline",
    "solve_strip2",
    "strip_of",
    "successors",
    "verify",
    "verify_ads",
]
