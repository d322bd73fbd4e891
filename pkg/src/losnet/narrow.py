"""Exact dynamic program for maximum-weight independent sets on narrow instances.

A narrow instance is flattened into column-major form: columns run along the
long axis, rows enumerate the (d-1)-dimensional cross-section.  The DP sweeps
columns left to right.  Its state is a *feasible window*: a 0/1 stencil of the
trailing ``omega`` columns that some independent placement can realize.  Two
windows chain when the tail of the first equals the head of the second, so
each step extends the best chain by one column and charges exactly the weight
picked up in the newly exposed column.

Window counts are exponential in the row count, so every entry point takes an
enumeration budget and refuses (``CapacityError``) rather than degrade.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core import (
    Coords,
    LosInstance,
    Solution,
    default_long_axis,
)
from .errors import CapacityError, ValidationError

DEFAULT_WINDOW_BUDGET = 10_000_000

# Row position encoding inside a window: 0 = empty row, 1..omega = the
# window column holding the row's single entry.
NONE_POS = 0


RowSpec = "tuple[int, ...] | tuple[Coords, ...]"


def rows_for(row_extents: tuple[int, ...]) -> tuple[Coords, ...]:
    """All row vectors of a box cross-section, lexicographic order."""
    return tuple(itertools.product(*(range(1, e + 1) for e in row_extents)))


def normalize_rows(row_spec) -> tuple[Coords, ...]:
    """Row vectors from either per-axis extents or an explicit arrangement.

    A tuple of ints is a box of extents (rows are its full cross-product);
    a tuple of int-tuples is taken literally, sorted lexicographically.
    Arrangements let callers reason about sparse cross-sections, e.g. two
    rows that differ in two coordinates and therefore never interact.
    """
    spec = tuple(row_spec)
    if not spec:
        raise ValidationError("row specification must be non-empty")
    if all(isinstance(e, int) for e in spec):
        if any(e < 1 for e in spec):
            raise ValidationError(f"extents must be positive, got {spec}")
        return rows_for(spec)
    rows = tuple(tuple(int(c) for c in r) for r in spec)
    width = len(rows[0])
    if width < 1 or any(len(r) != width for r in rows):
        raise ValidationError(f"rows must share a positive dimension: {rows}")
    if any(c < 1 for r in rows for c in r):
        raise ValidationError(f"row coordinates must be >= 1: {rows}")
    ordered = tuple(sorted(rows))
    if len(set(ordered)) != len(ordered):
        raise ValidationError(f"duplicate rows in {rows}")
    return ordered


def _rows_conflict(ra: Coords, rb: Coords, omega: int) -> bool:
    # Rows conflict when they share a line of sight with gap < omega; such
    # rows may never occupy the same window column.
    axis = -1
    for i, (x, y) in enumerate(zip(ra, rb)):
        if x != y:
            if axis >= 0:
                return False
            axis = i
    if axis < 0:
        return False
    return abs(ra[axis] - rb[axis]) < omega


@functools.lru_cache(maxsize=None)
def _row_structure(
    rows: tuple[Coords, ...], omega: int
) -> tuple[int, ...]:
    """Per row, the bitmask of rows it conflicts with."""
    masks = []
    for a, ra in enumerate(rows):
        m = 0
        for b, rb in enumerate(rows):
            if a != b and _rows_conflict(ra, rb, omega):
                m |= 1 << b
        masks.append(m)
    return tuple(masks)


@dataclass(frozen=True)
class FeasibleWindow:
    """Width-``omega`` 0/1 stencil admitting an independent witness.

    ``positions[r]`` is 0 when row r is empty, else the 1-based window column
    of its single entry (two entries in one row would sit less than omega
    apart inside the window, so one per row is structural).  Feasibility
    additionally requires that no two conflicting rows share a column.

    ``rows`` are lexicographically sorted; the canonical key encodes the
    positions one byte per row in that order, so key order and tuple order
    coincide.
    """

    rows: tuple[Coords, ...]
    omega: int
    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", normalize_rows(self.rows))
        object.__setattr__(self, "positions", tuple(self.positions))
        if not 2 <= self.omega <= 255:
            raise ValidationError(
                f"omega must be in [2, 255] for byte keys, got {self.omega}"
            )
        conflicts = _row_structure(self.rows, self.omega)
        if len(self.positions) != len(self.rows):
            raise ValidationError(
                f"expected {len(self.rows)} row positions, got {len(self.positions)}"
            )
        col_masks: dict[int, int] = {}
        for r, p in enumerate(self.positions):
            if not 0 <= p <= self.omega:
                raise ValidationError(
                    f"position {p} out of range 0..{self.omega}"
                )
            if p:
                if col_masks.get(p, 0) & conflicts[r]:
                    raise ValidationError(
                        f"no witness: conflicting rows share column {p}"
                    )
                col_masks[p] = col_masks.get(p, 0) | (1 << r)

    @property
    def key(self) -> bytes:
        return bytes(self.positions)

    @classmethod
    def zero(cls, row_spec, omega: int) -> "FeasibleWindow":
        rows = normalize_rows(row_spec)
        return cls(rows, omega, (NONE_POS,) * len(rows))

    def position_of(self, row: Coords) -> int:
        return self.positions[self.rows.index(tuple(row))]

    def as_grid(self) -> tuple[tuple[int, ...], ...]:
        """Rows x omega 0/1 grid (handy for array-level comparisons)."""
        return tuple(
            tuple(1 if p == c else 0 for c in range(1, self.omega + 1))
            for p in self.positions
        )

    def __lt__(self, other: "FeasibleWindow") -> bool:
        return self.key < other.key


def enumerate_windows(
    row_spec, omega: int, budget: int | None = None
) -> list[FeasibleWindow]:
    """All feasible windows for the given cross-section, ascending key.

    ``row_spec`` is either per-axis extents or an explicit row arrangement
    (see ``normalize_rows``).  Refuses when the raw enumeration size
    (omega+1)^rows exceeds ``budget`` (default ``DEFAULT_WINDOW_BUDGET``).
    """
    if budget is None:
        budget = DEFAULT_WINDOW_BUDGET
    rows = normalize_rows(row_spec)
    conflicts = _row_structure(rows, omega)
    size = (omega + 1) ** len(rows)
    if size > budget:
        raise CapacityError(
            f"window enumeration size (omega+1)^rows = {size} exceeds "
            f"budget {budget} (rows={len(rows)}, omega={omega})"
        )
    out: list[FeasibleWindow] = []
    nrows = len(rows)
    positions = [NONE_POS] * nrows
    col_masks = [0] * (omega + 1)

    def rec(r: int) -> None:
        if r == nrows:
            out.append(FeasibleWindow(rows, omega, tuple(positions)))
            return
        bit = 1 << r
        for p in range(omega + 1):
            if p and (col_masks[p] & conflicts[r]):
                continue
            positions[r] = p
            if p:
                col_masks[p] |= bit
            rec(r + 1)
            if p:
                col_masks[p] &= ~bit
        positions[r] = NONE_POS

    rec(0)
    return out


def consistent(w1: FeasibleWindow, w2: FeasibleWindow) -> bool:
    """Tail of ``w1`` equals head of ``w2``: the legal DP chaining relation.

    Per row with positions (a, b): dropping w1's first column leaves an entry
    at a-1 when a >= 2 and nothing otherwise; dropping w2's last column
    leaves an entry at b when b <= omega-1 and nothing otherwise.  The two
    leftovers must be literally equal.
    """
    if w1.rows != w2.rows or w1.omega != w2.omega:
        raise ValidationError("window shape mismatch")
    om = w1.omega
    for a, b in zip(w1.positions, w2.positions):
        if a >= 2:
            if b != a - 1:
                return False
        elif 1 <= b <= om - 1:
            return False
    return True


class NarrowArray:
    """Weight table of a narrow instance.

    Columns 1..n run along the long axis; ``omega`` implicit all-zero columns
    -(omega-1)..0 precede them so the DP can start from the empty window.
    Only positive cells are stored.
    """

    __slots__ = ("row_extents", "omega", "n", "long_axis", "rows", "_ridx", "_cols")

    def __init__(
        self,
        row_extents: Iterable[int],
        omega: int,
        n: int,
        cells: Mapping[tuple[Coords, int], Fraction] | None = None,
        long_axis: int = 0,
    ) -> None:
        self.row_extents = tuple(int(e) for e in row_extents)
        if any(e < 1 for e in self.row_extents) or not self.row_extents:
            raise ValidationError(f"bad row extents {self.row_extents}")
        if omega < 2:
            raise ValidationError(f"omega must be >= 2, got {omega}")
        if n < 0:
            raise ValidationError(f"column count must be >= 0, got {n}")
        self.omega = int(omega)
        self.n = int(n)
        self.long_axis = int(long_axis)
        self.rows = rows_for(self.row_extents)
        self._ridx = {row: i for i, row in enumerate(self.rows)}
        self._cols: dict[int, dict[int, Fraction]] = {}
        for (row, j), w in (cells or {}).items():
            row = tuple(row)
            if row not in self._ridx:
                raise ValidationError(f"row {row} outside extents {self.row_extents}")
            if not 1 <= j <= self.n:
                raise ValidationError(f"column {j} outside 1..{self.n}")
            w = Fraction(w)
            if w <= 0:
                raise ValidationError(f"cell weight must be positive, got {w}")
            col = self._cols.setdefault(j, {})
            ridx = self._ridx[row]
            if ridx in col:
                raise ValidationError(f"duplicate cell ({row}, {j})")
            col[ridx] = w

    @property
    def num_cols(self) -> int:
        """Total column count including the omega leading zero columns."""
        return self.n + self.omega

    def weight(self, row: Coords, j: int) -> Fraction:
        """Cell weight; 0 for empty cells and for the padding columns j <= 0."""
        row = tuple(row)
        if row not in self._ridx:
            raise ValidationError(f"row {row} outside extents {self.row_extents}")
        if not -(self.omega - 1) <= j <= self.n:
            raise ValidationError(
                f"column {j} outside {-(self.omega - 1)}..{self.n}"
            )
        if j <= 0:
            return Fraction(0)
        return self._cols.get(j, {}).get(self._ridx[row], Fraction(0))

    def column(self, j: int) -> dict[int, Fraction]:
        """Occupied row-index -> weight map of column j ({} off the grid)."""
        if j <= 0:
            return {}
        return dict(self._cols.get(j, {}))

    def column_sum(self, j: int) -> Fraction:
        return sum(self._cols.get(j, {}).values(), Fraction(0)) if j > 0 else Fraction(0)

    def array_sum(self) -> Fraction:
        return sum(
            (w for col in self._cols.values() for w in col.values()), Fraction(0)
        )

    def occupied_mask(self, j: int) -> int:
        mask = 0
        if j > 0:
            for ridx in self._cols.get(j, {}):
                mask |= 1 << ridx
        return mask

    def coords_of(self, row: Coords, j: int) -> Coords:
        """Instance coordinates of cell (row, j): j re-inserted at long_axis."""
        c = list(row)
        c.insert(self.long_axis, j)
        return tuple(c)


def array_sum(a: NarrowArray) -> Fraction:
    """Sum of all cells of the array."""
    return a.array_sum()


def build_array(inst: LosInstance, long_axis: int | None = None) -> NarrowArray:
    """Flatten ``inst`` into column-major form along ``long_axis``.

    Any instance embeds; the induced row count is the product of the other
    extents, and the window budget is what ultimately limits solvability.
    """
    p = inst.params
    if long_axis is None:
        long_axis = default_long_axis(p)
    if not 0 <= long_axis < p.d:
        raise ValidationError(f"long axis {long_axis} outside 0..{p.d - 1}")
    row_axes = [a for a in range(p.d) if a != long_axis]
    row_extents = tuple(p.extents[a] for a in row_axes)
    cells = {}
    for coords, w in inst.vertices.items():
        row = tuple(coords[a] for a in row_axes)
        cells[(row, coords[long_axis])] = w
    return NarrowArray(
        row_extents, p.omega, p.extents[long_axis], cells, long_axis=long_axis
    )


class NarrowDp:
    """Incremental column-at-a-time evaluator of the window DP.

    Push columns left to right; after each push the table holds, per feasible
    window, the best weight of an independent placement of the pushed prefix
    whose trailing stencil is that window.  Weights are kept only for the
    newest column (rolling); per-column predecessor keys and the per-column
    argmax are kept so any prefix's winning placement can be unwound without
    re-solving.

    Determinism: windows are visited in ascending canonical key order and
    ties are broken toward the smallest key, both for predecessors and for
    the final argmax.
    """

    def __init__(
        self,
        row_spec,
        omega: int,
        budget: int | None = None,
        keep_weights: bool = False,
    ) -> None:
        self.rows = normalize_rows(row_spec)
        self.omega = int(omega)
        self.windows = enumerate_windows(self.rows, self.omega, budget)
        self._conflicts = _row_structure(self.rows, self.omega)
        self._zero = (NONE_POS,) * len(self.rows)
        self._cur: dict[tuple[int, ...], Fraction] = {self._zero: Fraction(0)}
        self._preds: list[dict[tuple[int, ...], tuple[int, ...]]] = []
        self._bests: list[tuple[Fraction, tuple[int, ...]]] = []
        self._succ_cache: dict = {}
        self._indep_cache: dict[int, tuple[int, ...]] = {}
        self._weights_log: list[dict[tuple[int, ...], Fraction]] | None = (
            [] if keep_weights else None
        )

    # -- successor machinery -------------------------------------------------

    def _indep_submasks(self, avail: int) -> tuple[int, ...]:
        """All conflict-free submasks of ``avail`` (rows placeable together)."""
        cached = self._indep_cache.get(avail)
        if cached is not None:
            return cached
        if avail == 0:
            result: tuple[int, ...] = (0,)
        else:
            low = avail & -avail
            r = low.bit_length() - 1
            rest = avail & (avail - 1)
            without = self._indep_submasks(rest)
            with_r = tuple(
                low | s for s in self._indep_submasks(rest & ~self._conflicts[r])
            )
            result = without + with_r
        self._indep_cache[avail] = result
        return result

    def _successors(
        self, wpos: tuple[int, ...], occ_mask: int
    ) -> list[tuple[tuple[int, ...], int]]:
        """(successor positions, placed-row mask) pairs for one source window.

        The successor keeps the source's tail shifted left one column; rows
        left empty by the shift may gain an entry in the new last column,
        provided the cell is occupied and the placed rows are conflict-free.
        Results are cached per (shifted tail, eligible occupancy) so repeated
        support patterns along a long instance are computed once.
        """
        shifted = tuple((p - 1) if p >= 2 else NONE_POS for p in wpos)
        elig = occ_mask
        for r, p in enumerate(shifted):
            if p:
                elig &= ~(1 << r)
        key = (shifted, elig)
        cached = self._succ_cache.get(key)
        if cached is not None:
            return cached
        out = []
        omega = self.omega
        for smask in self._indep_submasks(elig):
            if smask:
                spos = list(shifted)
                m = smask
                while m:
                    low = m & -m
                    spos[low.bit_length() - 1] = omega
                    m ^= low
                out.append((tuple(spos), smask))
            else:
                out.append((shifted, 0))
        self._succ_cache[key] = out
        return out

    # -- column pushing -------------------------------------------------------

    @property
    def columns_pushed(self) -> int:
        return len(self._bests)

    def push_column(self, col: Mapping[int, Fraction]) -> None:
        """Advance the table by one column (row index -> weight of its cells)."""
        occ_mask = 0
        for ridx in col:
            occ_mask |= 1 << ridx
        nxt: dict[tuple[int, ...], Fraction] = {}
        pred: dict[tuple[int, ...], tuple[int, ...]] = {}
        gains: dict[int, Fraction] = {0: Fraction(0)}
        for wpos in sorted(self._cur):
            base = self._cur[wpos]
            for spos, smask in self._successors(wpos, occ_mask):
                gain = gains.get(smask)
                if gain is None:
                    gain = Fraction(0)
                    m = smask
                    while m:
                        low = m & -m
                        gain += col[low.bit_length() - 1]
                        m ^= low
                    gains[smask] = gain
                cand = base + gain
                prev = nxt.get(spos)
                if prev is None or cand > prev:
                    nxt[spos] = cand
                    pred[spos] = wpos
        self._cur = nxt
        self._preds.append(pred)
        best_w: Fraction | None = None
        best_pos: tuple[int, ...] | None = None
        for pos in sorted(nxt):
            v = nxt[pos]
            if best_w is None or v > best_w:
                best_w, best_pos = v, pos
        assert best_w is not None and best_pos is not None
        self._bests.append((best_w, best_pos))
        if self._weights_log is not None:
            self._weights_log.append(dict(nxt))

    # -- retrieval -------------------------------------------------------------

    def best_at(self, layer: int | None = None) -> tuple[Fraction, tuple[int, ...]]:
        """(best weight, argmax window positions) after ``layer`` columns."""
        if layer is None:
            layer = self.columns_pushed
        if layer == 0:
            return Fraction(0), self._zero
        return self._bests[layer - 1]

    @property
    def best_weight(self) -> Fraction:
        return self.best_at()[0]

    def pred_at(self, layer: int, positions: tuple[int, ...]) -> tuple[int, ...]:
        return self._preds[layer - 1][positions]

    def weights_at(self, layer: int) -> dict[tuple[int, ...], Fraction]:
        """Full weight table at a layer; requires keep_weights=True."""
        if self._weights_log is None:
            raise ValidationError("table built without keep_weights")
        return dict(self._weights_log[layer - 1])

    def placements(self, layer: int | None = None) -> list[tuple[Coords, int]]:
        """(row vector, 1-based column) placements of the winner through ``layer``.

        Unwinds the predecessor chain from the argmax window; each visited
        window contributes the rows sitting in its last column.
        """
        if layer is None:
            layer = self.columns_pushed
        if layer == 0:
            return []
        _, pos = self._bests[layer - 1]
        omega = self.omega
        out: list[tuple[Coords, int]] = []
        for j in range(layer, 0, -1):
            for r, p in enumerate(pos):
                if p == omega:
                    out.append((self.rows[r], j))
            pos = self._preds[j - 1][pos]
        if pos != self._zero:
            raise RuntimeError("predecessor chain did not close on the empty window")
        out.reverse()
        return out

    def window_chain(self, layer: int | None = None) -> list[FeasibleWindow]:
        """The winning window sequence W_1..W_layer (consistency-checkable)."""
        if layer is None:
            layer = self.columns_pushed
        if layer == 0:
            return []
        chain: list[tuple[int, ...]] = []
        _, pos = self._bests[layer - 1]
        for j in range(layer, 0, -1):
            chain.append(pos)
            pos = self._preds[j - 1][pos]
        chain.reverse()
        return [
            FeasibleWindow(self.rows, self.omega, p) for p in chain
        ]


def successors(
    w: FeasibleWindow, array: NarrowArray, j: int
) -> list[FeasibleWindow]:
    """All feasible windows chainable after ``w`` and supported at column j.

    Support means every entry of the successor sits on an occupied cell of
    the array columns j-omega+1..j (entries are placements, so they may only
    land where vertices exist).
    """
    if w.rows != array.rows or w.omega != array.omega:
        raise ValidationError("window/array shape mismatch")
    if not 1 <= j <= array.n:
        raise ValidationError(f"column {j} outside 1..{array.n}")
    omega = array.omega
    out = []
    for cand in enumerate_windows(array.rows, omega):
        if not consistent(w, cand):
            continue
        supported = True
        for r, p in enumerate(cand.positions):
            if p and array.weight(array.rows[r], j - omega + p) == 0:
                supported = False
                break
        if supported:
            out.append(cand)
    return out


def solve_mis_narrow(
    array: NarrowArray,
    budget: int | None = None,
    algorithm: str = "exact-narrow",
) -> Solution:
    """Maximum-weight independent set of a narrow array, exactly.

    Runs the window DP over all n columns, unwinds the predecessor chain of
    the final argmax, and re-sums the emitted placements against the array as
    an internal consistency check.
    """
    dp = NarrowDp(array.rows, array.omega, budget)
    for j in range(1, array.n + 1):
        dp.push_column(array.column(j))
    placements = dp.placements()
    weight = dp.best_weight if array.n else Fraction(0)
    resum = sum((array.weight(row, j) for row, j in placements), Fraction(0))
    if resum != weight:
        raise RuntimeError(
            f"DP placements re-sum to {resum}, table says {weight}"
        )
    coords = sorted(array.coords_of(row, j) for row, j in placements)
    meta = {
        "long_axis": array.long_axis,
        "rows": len(array.rows),
        "n": array.n,
        "windows": len(dp.windows),
    }
    return Solution(algorithm, tuple(coords), weight, meta)


def solve_exact_narrow(
    inst: LosInstance,
    long_axis: int | None = None,
    budget: int | None = None,
) -> Solution:
    """Exact MIS of an instance via the narrow-array DP along ``long_axis``."""
    return solve_mis_narrow(build_array(inst, long_axis), budget)
