"""Text formats: .losn instances, .ads schedules, solution JSON.

.losn (UTF-8, line oriented)::

    losn v1
    d=<int> omega=<int> extents=<int>,<int>[,...]
    # comment lines start with '#'
    v <c1> ... <cd> <weight>

Vertex lines are emitted sorted lexicographically by coordinates; weights
serialize as integers or p/q and parse from integers, decimals, or p/q.

.ads::

    ads v1
    clients=<k> times=<n> omega=<w> l=<l>
    a <0/1 string of length n>      (one line per client)
    w <client> <time> <weight>      (optional overrides, default weight 1)

Solution JSON uses the fixed key order (algorithm, weight, vertices, meta);
meta keys are sorted.  Weights are exact "p/q" strings (denominator 1
elided) so reports never lose precision.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .adssched import AdsInstance
from .core import Coords, InstanceParams, LosInstance, Solution
from .errors import ValidationError

LOSN_HEADER = "losn v1"
ADS_HEADER = "ads v1"


def format_weight(w: Fraction) -> str:
    return str(Fraction(w))


def parse_weight(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad weight {token!r}") from exc


def _parse_kv_line(line: str, expected: list[str], what: str) -> dict[str, str]:
    fields = {}
    for part in line.split():
        if "=" not in part:
            raise ValidationError(f"bad {what} header field {part!r}")
        key, _, value = part.partition("=")
        fields[key] = value
    missing = [k for k in expected if k not in fields]
    if missing:
        raise ValidationError(f"{what} header missing {missing}")
    extra = [k for k in fields if k not in expected]
    if extra:
        raise ValidationError(f"{what} header has unknown fields {extra}")
    return fields


def parse_losn_params(header_line: str) -> InstanceParams:
    fields = _parse_kv_line(header_line, ["d", "omega", "extents"], "losn")
    try:
        d = int(fields["d"])
        omega = int(fields["omega"])
        extents = tuple(int(x) for x in fields["extents"].split(","))
    except ValueError as exc:
        raise ValidationError(f"bad losn header {header_line!r}") from exc
    return InstanceParams(d, extents, omega)


def parse_vertex_line(line: str, params: InstanceParams) -> tuple[Coords, Fraction]:
    parts = line.split()
    if len(parts) != params.d + 2 or parts[0] != "v":
        raise ValidationError(
            f"bad vertex line {line!r} (want 'v <{params.d} coords> <weight>')"
        )
    try:
        coords = tuple(int(x) for x in parts[1 : 1 + params.d])
    except ValueError as exc:
        raise ValidationError(f"bad coordinates in {line!r}") from exc
    return coords, parse_weight(parts[-1])


def serialize_instance(inst: LosInstance, comments: Iterable[str] = ()) -> str:
    p = inst.params
    lines = [
        LOSN_HEADER,
        f"d={p.d} omega={p.omega} extents={','.join(map(str, p.extents))}",
    ]
    lines.extend(f"# {c}" for c in comments)
    for coords in inst.coords_sorted():
        cs = " ".join(map(str, coords))
        lines.append(f"v {cs} {format_weight(inst.vertices[coords])}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> LosInstance:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines or lines[0] != LOSN_HEADER:
        raise ValidationError(f"expected first line {LOSN_HEADER!r}")
    if len(lines) < 2:
        raise ValidationError("missing losn parameter line")
    params = parse_losn_params(lines[1])
    cells = {}
    for line in lines[2:]:
        coords, w = parse_vertex_line(line, params)
        if coords in cells:
            raise ValidationError(f"duplicate vertex at {coords}")
        cells[coords] = w
    return LosInstance(params, cells)


def load_instance(path: str | Path) -> LosInstance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def save_instance(
    path: str | Path, inst: LosInstance, comments: Iterable[str] = ()
) -> None:
    Path(path).write_text(serialize_instance(inst, comments), encoding="utf-8")


# -- .ads ---------------------------------------------------------------------


def serialize_ads(ads: AdsInstance) -> str:
    lines = [
        ADS_HEADER,
        f"clients={ads.k_clients} times={ads.n_times} omega={ads.omega} l={ads.l}",
    ]
    for row in ads.available:
        lines.append("a " + "".join(map(str, row)))
    for (c, t) in sorted(ads.weights):
        lines.append(f"w {c} {t} {format_weight(ads.weights[(c, t)])}")
    return "\n".join(lines) + "\n"


def parse_ads(text: str) -> AdsInstance:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines or lines[0] != ADS_HEADER:
        raise ValidationError(f"expected first line {ADS_HEADER!r}")
    if len(lines) < 2:
        raise ValidationError("missing ads parameter line")
    fields = _parse_kv_line(lines[1], ["clients", "times", "omega", "l"], "ads")
    try:
        k = int(fields["clients"])
        n = int(fields["times"])
        omega = int(fields["omega"])
        cap = int(fields["l"])
    except ValueError as exc:
        raise ValidationError(f"bad ads header {lines[1]!r}") from exc
    rows: list[tuple[int, ...]] = []
    weights: dict[tuple[int, int], Fraction] = {}
    for line in lines[2:]:
        parts = line.split()
        if parts[0] == "a" and len(parts) == 2:
            if any(ch not in "01" for ch in parts[1]):
                raise ValidationError(f"availability must be 0/1: {line!r}")
            rows.append(tuple(int(ch) for ch in parts[1]))
        elif parts[0] == "w" and len(parts) == 4:
            try:
                c, t = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ValidationError(f"bad weight line {line!r}") from exc
            key = (c, t)
            if key in weights:
                raise ValidationError(f"duplicate weight for {key}")
            weights[key] = parse_weight(parts[3])
        else:
            raise ValidationError(f"bad ads line {line!r}")
    return AdsInstance(k, n, omega, cap, tuple(rows), weights)


def load_ads(path: str | Path) -> AdsInstance:
    return parse_ads(Path(path).read_text(encoding="utf-8"))


# -- solution JSON --------------------------------------------------------------


def solution_dict(sol: Solution, with_float: bool = False) -> dict:
    d: dict = {"algorithm": sol.algorithm, "weight": format_weight(sol.total_weight)}
    if with_float:
        d["weight_float"] = float(sol.total_weight)
    d["vertices"] = [list(c) for c in sol.vertices]
    d["meta"] = {k: sol.meta[k] for k in sorted(sol.meta)}
    return d


def solution_to_json(sol: Solution, with_float: bool = False) -> str:
    return json.dumps(solution_dict(sol, with_float), indent=2) + "\n"


def parse_solution_json(text: str) -> Solution:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"bad solution JSON: {exc}") from exc
    for key in ("algorithm", "weight", "vertices"):
        if key not in raw:
            raise ValidationError(f"solution JSON missing {key!r}")
    vertices = tuple(tuple(int(x) for x in c) for c in raw["vertices"])
    return Solution(
        str(raw["algorithm"]),
        vertices,
        parse_weight(str(raw["weight"])),
        dict(raw.get("meta", {})),
    )


def load_solution(path: str | Path) -> Solution:
    return parse_solution_json(Path(path).read_text(encoding="utf-8"))
