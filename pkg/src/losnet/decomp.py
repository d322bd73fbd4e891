"""Strip and block decompositions: the 2-approximation and the PTAS.

Both algorithms cut the grid across the narrow axes into parts the exact
narrow solver can handle, then recombine:

* strips of width omega-1 across every non-long axis are mutually
  non-adjacent whenever their index parities agree, so the heavier of the
  odd/even unions of per-strip optima is within a factor 2 of optimal;

* shifted block partitions discard one strip out of every h+1, solve the
  surviving blocks exactly, and keep the best shift, losing at most a
  1 + 1/h factor per cut axis.  Cutting the non-long axes one per level
  yields the (1+epsilon) scheme for any dimension.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    Coords,
    InstanceParams,
    LosInstance,
    Solution,
    default_long_axis,
    set_weight,
)
from .errors import ValidationError
from .narrow import solve_exact_narrow


@dataclass(frozen=True)
class StripIndex:
    """Index vector of a strip across the cut axes, with its parity."""

    index: tuple[int, ...]
    parity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", tuple(int(i) for i in self.index))
        if any(i < 0 for i in self.index):
            raise ValidationError(f"strip index entries must be >= 0: {self.index}")
        if self.parity != sum(self.index) % 2:
            raise ValidationError(
                f"parity {self.parity} inconsistent with index {self.index}"
            )

    @classmethod
    def of(cls, index: Iterable[int]) -> "StripIndex":
        idx = tuple(int(i) for i in index)
        return cls(idx, sum(idx) % 2)


def strip_of(coords: Coords, k: int, cut_axes: Sequence[int]) -> StripIndex:
    """Strip holding ``coords``: 0-based index (coord-1)//k per cut axis."""
    if k < 1:
        raise ValidationError(f"strip width k must be >= 1, got {k}")
    return StripIndex.of((coords[a] - 1) // k for a in cut_axes)


def _subinstance(
    inst: LosInstance, ranges: dict[int, tuple[int, int]]
) -> tuple[LosInstance, tuple[int, ...]]:
    """Restrict ``inst`` to per-axis coordinate ranges, translated to 1-based.

    Returns the sub-instance and the per-axis offsets to add back to its
    coordinates to recover positions in ``inst``.
    """
    p = inst.params
    extents = []
    offsets = []
    for a in range(p.d):
        lo, hi = ranges.get(a, (1, p.extents[a]))
        extents.append(hi - lo + 1)
        offsets.append(lo - 1)
    cells = {}
    for coords, w in inst.vertices.items():
        if all(
            ranges.get(a, (1, p.extents[a]))[0]
            <= coords[a]
            <= ranges.get(a, (1, p.extents[a]))[1]
            for a in range(p.d)
        ):
            cells[tuple(c - o for c, o in zip(coords, offsets))] = w
    sub = LosInstance(InstanceParams(p.d, tuple(extents), p.omega), cells)
    return sub, tuple(offsets)


def _translate(coords: Iterable[Coords], offsets: tuple[int, ...]) -> list[Coords]:
    return [tuple(c + o for c, o in zip(cc, offsets)) for cc in coords]


def parity_cut(
    inst: LosInstance, k: int, long_axis: int | None = None
) -> tuple[LosInstance, LosInstance]:
    """Split vertices into (odd, even) strip-parity sub-instances."""
    p = inst.params
    if long_axis is None:
        long_axis = default_long_axis(p)
    cut_axes = [a for a in range(p.d) if a != long_axis]
    odd, even = {}, {}
    for coords, w in inst.vertices.items():
        if strip_of(coords, k, cut_axes).parity:
            odd[coords] = w
        else:
            even[coords] = w
    return LosInstance(p, odd), LosInstance(p, even)


def solve_strip2(
    inst: LosInstance,
    long_axis: int | None = None,
    budget: int | None = None,
    threads: int = 1,
) -> Solution:
    """2-approximation by odd/even strips of width omega-1.

    Each strip is solved exactly; two strips with the same index parity are
    at least omega apart on some axis and never interact, so each parity
    union is independent.  The heavier union (ties to even) is at least half
    the optimum because the optimum splits across the two parity classes.
    """
    p = inst.params
    if long_axis is None:
        long_axis = default_long_axis(p)
    k = p.omega - 1
    cut_axes = [a for a in range(p.d) if a != long_axis]
    by_strip: dict[tuple[int, ...], list[Coords]] = {}
    for coords in inst.vertices:
        by_strip.setdefault(strip_of(coords, k, cut_axes).index, []).append(coords)

    def solve_one(index: tuple[int, ...]) -> list[Coords]:
        ranges = {}
        for a, i in zip(cut_axes, index):
            ranges[a] = (k * i + 1, min(k * (i + 1), p.extents[a]))
        sub, offsets = _subinstance(inst, ranges)
        sol = solve_exact_narrow(sub, long_axis=long_axis, budget=budget)
        return _translate(sol.vertices, offsets)

    indices = sorted(by_strip)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            solved = list(pool.map(solve_one, indices))
    else:
        solved = [solve_one(i) for i in indices]

    unions: dict[int, list[Coords]] = {0: [], 1: []}
    for index, coords in zip(indices, solved):
        unions[sum(index) % 2].extend(coords)
    odd_w = set_weight(inst, unions[1])
    even_w = set_weight(inst, unions[0])
    parity = 1 if odd_w > even_w else 0
    chosen = unions[parity]
    meta = {
        "k": k,
        "parity": "odd" if parity else "even",
        "strips": len(indices),
        "odd_weight": str(odd_w),
        "even_weight": str(even_w),
    }
    return Solution.from_coords(inst, "strip2", chosen, meta)


# -- shifted block partitions -------------------------------------------------


@dataclass(frozen=True)
class Part:
    """A maximal coordinate range on the cut axis plus its vertices."""

    lo: int
    hi: int
    vertices: tuple[Coords, ...]


@dataclass(frozen=True)
class BlockDecomposition:
    """Shifted partition of one axis into solved blocks and discarded strips.

    The leading block spans shift*k coordinates; afterwards width-k boundary
    strips alternate with width-h*k blocks, the final part possibly cut
    short.  Blocks and boundary partition the vertex set.
    """

    shift: int
    h: int
    axis: int
    k: int
    blocks: tuple[Part, ...]
    boundary: tuple[Part, ...]


def make_blocks(
    inst: LosInstance, h: int, shift: int, axis: int, k: int
) -> BlockDecomposition:
    """Cut ``axis`` into the shifted block/boundary pattern."""
    if h < 1:
        raise ValidationError(f"h must be >= 1, got {h}")
    if not 0 <= shift <= h:
        raise ValidationError(f"shift must be in 0..{h}, got {shift}")
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    p = inst.params
    if not 0 <= axis < p.d:
        raise ValidationError(f"axis {axis} outside 0..{p.d - 1}")
    extent = p.extents[axis]
    segments: list[tuple[int, int, bool]] = []  # (lo, hi, is_block)
    pos = 1
    if shift:
        hi = min(shift * k, extent)
        segments.append((1, hi, True))
        pos = hi + 1
    while pos <= extent:
        hi = min(pos + k - 1, extent)
        segments.append((pos, hi, False))
        pos = hi + 1
        if pos > extent:
            break
        hi = min(pos + h * k - 1, extent)
        segments.append((pos, hi, True))
        pos = hi + 1
    members: dict[int, list[Coords]] = {i: [] for i in range(len(segments))}
    for coords in sorted(inst.vertices):
        c = coords[axis]
        for i, (lo, hi, _) in enumerate(segments):
            if lo <= c <= hi:
                members[i].append(coords)
                break
    blocks, boundary = [], []
    for i, (lo, hi, is_block) in enumerate(segments):
        part = Part(lo, hi, tuple(members[i]))
        (blocks if is_block else boundary).append(part)
    return BlockDecomposition(shift, h, axis, k, tuple(blocks), tuple(boundary))


def ptas_shift_count(epsilon: Fraction, d: int) -> int:
    """Block height parameter h: smallest h with (1+1/h)^(d-1) <= 1+epsilon.

    This is the integer form of ceil(1/eps') for
    eps' = (1+epsilon)^(1/(d-1)) - 1, computed in exact rational arithmetic,
    so the per-level loss (1+1/h) compounds to at most 1+epsilon over the
    d-1 cut axes.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValidationError(f"epsilon must be positive, got {epsilon}")
    if d < 2:
        raise ValidationError(f"dimension must be >= 2, got {d}")
    h = 1
    while (1 + Fraction(1, h)) ** (d - 1) > 1 + epsilon:
        h += 1
    return h


def solve_ptas(
    inst: LosInstance,
    epsilon: Fraction,
    long_axis: int | None = None,
    budget: int | None = None,
    threads: int = 1,
) -> Solution:
    """(1+epsilon)-approximation by shifted blocks, any dimension.

    Cuts the non-long axes one per level, ascending axis index.  Per level
    and per shift, the axis splits into blocks separated by discarded
    width-(omega-1) strips; blocks are narrower on that axis and recurse,
    bottoming out in the exact narrow solver.  Each level keeps its best
    shift (smallest index on ties).
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValidationError(f"epsilon must be positive, got {epsilon}")
    p = inst.params
    if long_axis is None:
        long_axis = default_long_axis(p)
    if not 0 <= long_axis < p.d:
        raise ValidationError(f"long axis {long_axis} outside 0..{p.d - 1}")
    k = p.omega - 1
    h = ptas_shift_count(epsilon, p.d)
    cut_axes = [a for a in range(p.d) if a != long_axis]
    coords, shift, block_weights = _ptas_level(
        inst, cut_axes, long_axis, h, k, budget, threads
    )
    meta = {
        "epsilon": str(epsilon),
        "h": h,
        "k": k,
        "shift": shift,
        "blocks": len(block_weights),
        "block_weights": [str(w) for w in block_weights],
    }
    return Solution.from_coords(inst, "ptas", coords, meta)


def _ptas_level(
    inst: LosInstance,
    cut_axes: list[int],
    long_axis: int,
    h: int,
    k: int,
    budget: int | None,
    threads: int = 1,
) -> tuple[list[Coords], int, list[Fraction]]:
    if not cut_axes:
        sol = solve_exact_narrow(inst, long_axis=long_axis, budget=budget)
        return list(sol.vertices), 0, [sol.total_weight]
    axis = cut_axes[0]

    def solve_block(part: Part) -> list[Coords]:
        if not part.vertices:
            return []
        sub, offsets = _subinstance(inst, {axis: (part.lo, part.hi)})
        sub_coords, _, _ = _ptas_level(
            sub, cut_axes[1:], long_axis, h, k, budget
        )
        return _translate(sub_coords, offsets)

    best: tuple[Fraction, int, list[Coords], list[Fraction]] | None = None
    for shift in range(h + 1):
        dec = make_blocks(inst, h, shift, axis, k)
        if threads > 1 and dec.blocks:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                solved = list(pool.map(solve_block, dec.blocks))
        else:
            solved = [solve_block(b) for b in dec.blocks]
        coords: list[Coords] = []
        weights: list[Fraction] = []
        for block_coords in solved:
            coords.extend(block_coords)
            weights.append(set_weight(inst, block_coords))
        total = sum(weights, Fraction(0))
        if best is None or total > best[0]:
            best = (total, shift, coords, weights)
    assert best is not None
    return best[2], best[1], best[3]
