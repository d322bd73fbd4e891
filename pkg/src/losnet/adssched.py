"""Airing-schedule optimization with per-client gaps and per-slot capacity.

An instance has k clients and n time slots.  Each client is available at a
subset of slots; a schedule picks (client, slot) pairs so that the same
client's picks are at least ``omega`` slots apart and no slot serves more
than ``l`` clients.  The goal is the maximum number (or total weight) of
picks.

This is the same column DP as the independent-set solver with one change:
rows (clients) never constrain each other pairwise, only through the shared
per-column capacity ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .core import Solution
from .errors import CapacityError, ValidationError
from .narrow import DEFAULT_WINDOW_BUDGET, NONE_POS


@dataclass(frozen=True)
class AdsInstance:
    """Availability matrix plus gap and capacity parameters.

    ``available[c][t]`` is 1 when client c+1 may air at slot t+1.  Optional
    weights (keyed by 1-based (client, slot)) default to 1; a capacity above
    ``k_clients`` is legal and simply never binds.
    """

    k_clients: int
    n_times: int
    omega: int
    l: int
    available: tuple[tuple[int, ...], ...]
    weights: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.k_clients < 1:
            raise ValidationError(f"need k_clients >= 1, got {self.k_clients}")
        if self.n_times < 1:
            raise ValidationError(f"need n_times >= 1, got {self.n_times}")
        if self.omega < 2:
            raise ValidationError(f"omega must be >= 2, got {self.omega}")
        if self.l < 1:
            raise ValidationError(f"capacity l must be >= 1, got {self.l}")
        rows = tuple(tuple(int(x) for x in row) for row in self.available)
        object.__setattr__(self, "available", rows)
        if len(rows) != self.k_clients or any(
            len(row) != self.n_times for row in rows
        ):
            raise ValidationError(
                f"availability must be {self.k_clients}x{self.n_times}"
            )
        if any(x not in (0, 1) for row in rows for x in row):
            raise ValidationError("availability entries must be 0/1")
        weights = {}
        for (c, t), w in dict(self.weights).items():
            w = Fraction(w)
            if not (1 <= c <= self.k_clients and 1 <= t <= self.n_times):
                raise ValidationError(f"weight for out-of-range pair ({c}, {t})")
            if not rows[c - 1][t - 1]:
                raise ValidationError(
                    f"weight given for unavailable pair ({c}, {t})"
                )
            if w <= 0:
                raise ValidationError(f"weight must be positive, got {w}")
            weights[(c, t)] = w
        object.__setattr__(self, "weights", weights)

    def weight_at(self, client: int, time: int) -> Fraction:
        return self.weights.get((client, time), Fraction(1))


def count_ads_windows(k_clients: int, omega: int, l: int) -> int:
    """Number of width-``omega`` schedule stencils: one entry per client row,
    at most ``l`` entries per column.

    Counted by assigning clients one at a time; completions depend only on
    the multiset of remaining column capacities, which keeps the recursion
    polynomial even when the stencil count itself is huge.
    """
    memo: dict[tuple[int, tuple[int, ...]], int] = {}

    def rec(clients_left: int, caps: tuple[int, ...]) -> int:
        if clients_left == 0:
            return 1
        key = (clients_left, caps)
        got = memo.get(key)
        if got is not None:
            return got
        total = rec(clients_left - 1, caps)  # client stays empty
        for cap_value, multiplicity in _multiplicities(caps):
            if cap_value > 0:
                reduced = _reduce_one(caps, cap_value)
                total += multiplicity * rec(clients_left - 1, reduced)
        memo[key] = total
        return total

    return rec(k_clients, tuple([min(l, k_clients)] * omega))


def _multiplicities(caps: tuple[int, ...]) -> list[tuple[int, int]]:
    out: dict[int, int] = {}
    for c in caps:
        out[c] = out.get(c, 0) + 1
    return sorted(out.items())


def _reduce_one(caps: tuple[int, ...], value: int) -> tuple[int, ...]:
    caps_list = list(caps)
    caps_list[caps_list.index(value)] = value - 1
    return tuple(sorted(caps_list))


def solve_adssched(ads: AdsInstance, budget: int | None = None) -> Solution:
    """Optimal airing schedule via the column DP.

    State: per-client position of its latest pick inside the trailing
    ``omega`` slots (0 when none).  A transition shifts every position left
    and optionally places up to ``l`` newly-freed available clients in the
    new slot.  Same chaining, tie-breaking, and retrieval discipline as the
    independent-set DP.
    """
    if budget is None:
        budget = DEFAULT_WINDOW_BUDGET
    k, n, omega, cap = ads.k_clients, ads.n_times, ads.omega, ads.l
    size = count_ads_windows(k, omega, cap)
    if size > budget:
        raise CapacityError(
            f"schedule window count {size} exceeds budget {budget} "
            f"(clients={k}, omega={omega}, l={cap})"
        )
    zero = (NONE_POS,) * k
    cur: dict[tuple[int, ...], Fraction] = {zero: Fraction(0)}
    preds: list[dict[tuple[int, ...], tuple[int, ...]]] = []
    bests: list[tuple[Fraction, tuple[int, ...]]] = []
    for t in range(1, n + 1):
        avail = [c for c in range(k) if ads.available[c][t - 1]]
        nxt: dict[tuple[int, ...], Fraction] = {}
        pred: dict[tuple[int, ...], tuple[int, ...]] = {}
        for wpos in sorted(cur):
            base = cur[wpos]
            shifted = tuple((p - 1) if p >= 2 else NONE_POS for p in wpos)
            eligible = [c for c in avail if shifted[c] == NONE_POS]
            for smask_rows in _subsets_upto(eligible, cap):
                if smask_rows:
                    spos = list(shifted)
                    gain = Fraction(0)
                    for c in smask_rows:
                        spos[c] = omega
                        gain += ads.weight_at(c + 1, t)
                    spos = tuple(spos)
                else:
                    spos, gain = shifted, Fraction(0)
                cand = base + gain
                prev = nxt.get(spos)
                if prev is None or cand > prev:
                    nxt[spos] = cand
                    pred[spos] = wpos
        cur = nxt
        preds.append(pred)
        bw: Fraction | None = None
        bpos: tuple[int, ...] | None = None
        for pos in sorted(nxt):
            v = nxt[pos]
            if bw is None or v > bw:
                bw, bpos = v, pos
        assert bw is not None and bpos is not None
        bests.append((bw, bpos))
    picks: list[tuple[int, int]] = []
    if n:
        weight, pos = bests[-1]
        for t in range(n, 0, -1):
            for c, p in enumerate(pos):
                if p == omega:
                    picks.append((c + 1, t))
            pos = preds[t - 1][pos]
        if pos != zero:
            raise RuntimeError("schedule chain did not close on the empty state")
    else:  # pragma: no cover - n >= 1 enforced by AdsInstance
        weight = Fraction(0)
    resum = sum((ads.weight_at(c, t) for c, t in picks), Fraction(0))
    if resum != weight:
        raise RuntimeError(f"schedule re-sum {resum} != table weight {weight}")
    meta = {"clients": k, "times": n, "omega": omega, "l": cap}
    return Solution("adssched", tuple(sorted(picks)), weight, meta)


def _subsets_upto(items: list[int], cap: int) -> list[tuple[int, ...]]:
    """All subsets of ``items`` with size <= cap, deterministic order."""
    out: list[tuple[int, ...]] = [()]
    for x in items:
        out.extend(
            s + (x,) for s in list(out) if len(s) < cap
        )
    return out
