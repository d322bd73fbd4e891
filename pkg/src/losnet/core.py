"""Instance model for line-of-sight networks on d-dimensional integer grids.

Vertices sit on 1-based grid coordinates inside a box of per-axis extents.
Two vertices are adjacent when their coordinates differ in exactly one
position and the gap there is strictly less than the range parameter omega.
Edges are never materialized; every solver consumes the adjacency predicate
directly.

Weights are exact rationals (``fractions.Fraction``) so optimality claims
can be checked with equality rather than tolerances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import UnknownCoordinateError, ValidationError
from .rng import SplitMix64

Coords = tuple[int, ...]

Weight = Fraction


def _as_weight(value) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"not a rational weight: {value!r}") from exc


@dataclass(frozen=True)
class InstanceParams:
    """Grid box (dimension, per-axis extents) plus the range parameter.

    By convention axis 0 is the long axis of narrow instances, but nothing
    here depends on it; solvers take the long axis explicitly.  Narrowness
    is always derived from the extents, never stored.
    """

    d: int
    extents: tuple[int, ...]
    omega: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "extents", tuple(int(e) for e in self.extents))
        if self.d < 2:
            raise ValidationError(f"dimension must be >= 2, got {self.d}")
        if len(self.extents) != self.d:
            raise ValidationError(
                f"expected {self.d} extents, got {len(self.extents)}"
            )
        if any(e < 1 for e in self.extents):
            raise ValidationError(f"extents must be positive, got {self.extents}")
        if self.omega < 2:
            raise ValidationError(f"omega must be >= 2, got {self.omega}")

    def in_box(self, coords: Coords) -> bool:
        return len(coords) == self.d and all(
            1 <= c <= e for c, e in zip(coords, self.extents)
        )

    def is_narrow(self, long_axis: int, bound: int) -> bool:
        """True when every axis other than ``long_axis`` has extent <= bound."""
        return all(
            e <= bound for a, e in enumerate(self.extents) if a != long_axis
        )


def default_long_axis(params: InstanceParams) -> int:
    """Axis of maximum extent (smallest index on ties)."""
    return max(range(params.d), key=lambda a: (params.extents[a], -a))


@dataclass(frozen=True)
class Vertex:
    """A grid point with a positive rational weight."""

    coords: Coords
    weight: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        object.__setattr__(self, "weight", _as_weight(self.weight))
        if self.weight <= 0:
            raise ValidationError(
                f"vertex weight must be positive, got {self.weight} at {self.coords}"
            )


class LosInstance:
    """Immutable weighted vertex set embedded in a grid box."""

    __slots__ = ("params", "_cells")

    def __init__(
        self,
        params: InstanceParams,
        vertices: Iterable[Vertex] | Mapping[Coords, Fraction] = (),
    ) -> None:
        cells: dict[Coords, Fraction] = {}
        if isinstance(vertices, Mapping):
            items: Iterable[Vertex] = (
                Vertex(c, w) for c, w in vertices.items()
            )
        else:
            items = iter(vertices)
        for v in items:
            if not params.in_box(v.coords):
                raise ValidationError(
                    f"coordinates {v.coords} outside box extents={params.extents}"
                )
            if v.coords in cells:
                raise ValidationError(f"duplicate vertex at {v.coords}")
            cells[v.coords] = v.weight
        self.params = params
        object.__setattr__(self, "_cells", cells)

    # -- mapping-ish access -------------------------------------------------

    @property
    def vertices(self) -> Mapping[Coords, Fraction]:
        """Read-only coords -> weight view."""
        return MappingProxyType(self._cells)

    def __len__(self) -> int:
        return len(self._cells)

    def __contains__(self, coords: Coords) -> bool:
        return tuple(coords) in self._cells

    def weight_of(self, coords: Coords) -> Fraction:
        try:
            return self._cells[tuple(coords)]
        except KeyError:
            raise UnknownCoordinateError(
                f"no vertex at {tuple(coords)}"
            ) from None

    def coords_sorted(self) -> list[Coords]:
        return sorted(self._cells)

    def iter_vertices(self) -> Iterator[Vertex]:
        """Vertices in lexicographic coordinate order."""
        for c in sorted(self._cells):
            yield Vertex(c, self._cells[c])

    def total_weight(self) -> Fraction:
        return sum(self._cells.values(), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LosInstance):
            return NotImplemented
        return self.params == other.params and self._cells == other._cells

    def __repr__(self) -> str:
        return (
            f"LosInstance(d={self.params.d}, extents={self.params.extents}, "
            f"omega={self.params.omega}, vertices={len(self)})"
        )


@dataclass
class Solution:
    """Algorithm-tagged vertex set with its exact total weight.

    ``meta`` carries free-form diagnostics (shift chosen, phase counts, ...)
    restricted to JSON-friendly primitives so reports serialize canonically.
    """

    algorithm: str
    vertices: tuple[Coords, ...]
    total_weight: Fraction
    meta: dict[str, object] = field(default_factory=dict)

    @classmethod
    def from_coords(
        cls,
        inst: LosInstance,
        algorithm: str,
        coords: Iterable[Coords],
        meta: dict[str, object] | None = None,
    ) -> "Solution":
        """Build and validate a solution over ``inst`` (sorts, sums, checks)."""
        ordered = sorted(tuple(c) for c in coords)
        total = set_weight(inst, ordered)
        return cls(algorithm, tuple(ordered), total, dict(meta or {}))


# -- adjacency predicates ---------------------------------------------------


def shares_line_of_sight(p: Coords, q: Coords) -> bool:
    """True when the points differ in exactly one coordinate."""
    if len(p) != len(q):
        raise ValidationError(
            f"dimension mismatch: {len(p)}-tuple vs {len(q)}-tuple"
        )
    differing = 0
    for a, b in zip(p, q):
        if a != b:
            differing += 1
            if differing > 1:
                return False
    return differing == 1


def are_adjacent(p: Coords, q: Coords, omega: int) -> bool:
    """Shared line of sight with coordinate gap strictly below omega.

    A gap of exactly omega is NOT an edge; strictness matters everywhere
    downstream (window feasibility, strip separation, phase separation).
    """
    if omega < 2:
        raise ValidationError(f"omega must be >= 2, got {omega}")
    if len(p) != len(q):
        raise ValidationError(
            f"dimension mismatch: {len(p)}-tuple vs {len(q)}-tuple"
        )
    axis = -1
    for i, (a, b) in enumerate(zip(p, q)):
        if a != b:
            if axis >= 0:
                return False
            axis = i
    if axis < 0:
        return False
    return abs(p[axis] - q[axis]) < omega


def is_independent(inst: LosInstance, coords: Iterable[Coords]) -> bool:
    """Pairwise non-adjacency of the given vertices of ``inst``."""
    pts = [tuple(c) for c in coords]
    for c in pts:
        if c not in inst:
            raise UnknownCoordinateError(f"no vertex at {c}")
    omega = inst.params.omega
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if are_adjacent(pts[i], pts[j], omega):
                return False
    return True


def set_weight(inst: LosInstance, coords: Iterable[Coords]) -> Fraction:
    """Exact total weight of a duplicate-free set of vertices of ``inst``."""
    seen: set[Coords] = set()
    total = Fraction(0)
    for c in coords:
        c = tuple(c)
        if c in seen:
            raise ValidationError(f"duplicate coordinate {c}")
        seen.add(c)
        total += inst.weight_of(c)
    return total


# -- random generation ------------------------------------------------------


def _parse_weight_dist(spec: str) -> tuple[str, tuple]:
    parts = spec.split(":")
    if parts[0] == "const" and len(parts) == 2:
        c = _as_weight(parts[1])
        if c <= 0:
            raise ValidationError(f"const weight must be positive: {spec}")
        return "const", (c,)
    if parts[0] == "uniform" and len(parts) == 3:
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ValidationError(f"uniform bounds must be integers: {spec}") from exc
        if a < 1 or a > b:
            raise ValidationError(f"need 1 <= a <= b in uniform:a:b, got {spec}")
        return "uniform", (a, b)
    raise ValidationError(
        f"weight_dist must be 'const:c' or 'uniform:a:b', got {spec!r}"
    )


@dataclass(frozen=True)
class GenConfig:
    """Seeded random-instance recipe; equal configs yield equal instances."""

    params: InstanceParams
    density: Fraction
    weight_dist: str = "const:1"
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "density", Fraction(self.density))
        if not 0 <= self.density <= 1:
            raise ValidationError(f"density must be in [0,1], got {self.density}")
        _parse_weight_dist(self.weight_dist)  # validates
        object.__setattr__(self, "seed", int(self.seed))


def generate(cfg: GenConfig) -> LosInstance:
    """Generate an instance from a config: a pure, platform-stable function.

    Cells are visited in lexicographic coordinate order; each draws one
    64-bit splitmix64 value and hosts a vertex when the draw falls below
    the density threshold.  Occupied cells then draw their weight.
    """
    rng = SplitMix64(cfg.seed)
    threshold = math.ceil(cfg.density * (1 << 64))
    kind, args = _parse_weight_dist(cfg.weight_dist)
    cells: dict[Coords, Fraction] = {}
    ranges = [range(1, e + 1) for e in cfg.params.extents]
    for coords in itertools.product(*ranges):
        if rng.next64() < threshold:
            if kind == "const":
                w = args[0]
            else:
                a, b = args
                w = Fraction(a + rng.below(b - a + 1))
            cells[coords] = w
    return LosInstance(cfg.params, cells)
