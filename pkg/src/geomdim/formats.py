"""Text serialization of incidence structures and landmark sets.

``incidence v1`` (0-based indices, one record per line):

    incidence v1
    points <n>
    lines <m>
    L <j>: p1 p2 ...          (m lines, strictly increasing point indices)
    kind <projective|affine|biaffine|gq>      (optional)
    direction <j> <d>          (optional, per line, ascending j)
    class <i> <c>              (optional, per point, ascending i)
    removed_direction <d>      (optional)

``set v1``:

    set v1
    P <i>     (sorted, all point records first)
    L <j>     (sorted)

Serialization is canonical: parse followed by serialize is byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .geometry import Incidence, PlaneContext
from .metric import VertexSet


@dataclass(frozen=True)
class LoadedStructure:
    """A parsed incidence file: the structure plus optional annotations."""

    inc: Incidence
    kind: str | None
    ctx: PlaneContext | None


def dump_incidence(inc: Incidence, kind: str | None = None, ctx: PlaneContext | None = None) -> str:
    if ctx is not None:
        kind = ctx.kind
    out = ["incidence v1", f"points {inc.n_points}", f"lines {inc.n_lines}"]
    for j, row in enumerate(inc.points_of_line):
        out.append(f"L {j}: " + " ".join(str(p) for p in row))
    if kind is not None:
        out.append(f"kind {kind}")
    if ctx is not None:
        if ctx.direction_of_line is not None:
            for j, d in enumerate(ctx.direction_of_line):
                out.append(f"direction {j} {d}")
        if ctx.class_of_point is not None:
            for i, c in enumerate(ctx.class_of_point):
                out.append(f"class {i} {c}")
        if ctx.removed_direction is not None:
            out.append(f"removed_direction {ctx.removed_direction}")
    return "\n".join(out) + "\n"


def load_incidence(text: str) -> LoadedStructure:
    lines = [ln.rstrip("\n") for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "incidence v1":
        raise ValueError("not an 'incidence v1' file")
    if not lines[1].startswith("points ") or not lines[2].startswith("lines "):
        raise ValueError("malformed header: expected 'points <n>' then 'lines <m>'")
    n_points = int(lines[1].split()[1])
    n_lines = int(lines[2].split()[1])
    rows: list[tuple[int, ...]] = []
    kind = None
    directions: dict[int, int] = {}
    classes: dict[int, int] = {}
    removed = None
    for ln in lines[3:]:
        tokens = ln.split()
        if tokens[0] == "L":
            j = int(tokens[1].rstrip(":"))
            if j != len(rows):
                raise ValueError(f"line records out of order at L {j}")
            pts = tuple(int(t) for t in tokens[2:])
            if list(pts) != sorted(set(pts)):
                raise ValueError(f"L {j}: point indices must be strictly increasing")
            rows.append(pts)
        elif tokens[0] == "kind":
            kind = tokens[1]
        elif tokens[0] == "direction":
            directions[int(tokens[1])] = int(tokens[2])
        elif tokens[0] == "class":
            classes[int(tokens[1])] = int(tokens[2])
        elif tokens[0] == "removed_direction":
            removed = int(tokens[1])
        else:
            raise ValueError(f"unknown record {tokens[0]!r}")
    if len(rows) != n_lines:
        raise ValueError(f"expected {n_lines} line records, got {len(rows)}")
    inc = Incidence(n_points, rows)
    ctx = None
    if kind in ("affine", "biaffine"):
        q = isqrt(n_points)
        ctx = PlaneContext(
            kind=kind,
            inc=inc,
            q=q,
            direction_of_line=tuple(directions[j] for j in range(n_lines)),
            removed_direction=removed,
            class_of_point=(
                tuple(classes[i] for i in range(n_points)) if kind == "biaffine" else None
            ),
        )
    elif kind == "projective":
        q = len(rows[0]) - 1 if rows else 0
        ctx = PlaneContext(kind=kind, inc=inc, q=q)
    return LoadedStructure(inc=inc, kind=kind, ctx=ctx)


def dump_set(S: VertexSet) -> str:
    out = ["set v1"]
    out += [f"P {i}" for i in S.point_part]
    out += [f"L {j}" for j in S.line_part]
    return "\n".join(out) + "\n"


def load_set(text: str) -> VertexSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "set v1":
        raise ValueError("not a 'set v1' file")
    pts, lns = [], []
    for ln in lines[1:]:
        tokens = ln.split()
        if tokens[0] == "P":
            pts.append(int(tokens[1]))
        elif tokens[0] == "L":
            lns.append(int(tokens[1]))
        else:
            raise ValueError(f"unknown record {tokens[0]!r}")
    return VertexSet(tuple(pts), tuple(lns))
