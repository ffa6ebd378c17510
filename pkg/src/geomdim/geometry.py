"""Finite incidence geometries: projective/affine/biaffine planes over GF(q),
grids, PG(3,q) and the symplectic generalized quadrangle, plus axiom checks.

All constructors are deterministic: point and line indices come from sorting
normalized coordinate tuples, so identical parameters always produce
byte-identical structures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .gf import FiniteField, field_for_order


class Incidence:
    """A point-line incidence structure with bitset-backed adjacency.

    ``points_of_line[j]`` is the sorted tuple of point indices on line j;
    ``lines_of_point`` is derived.  Bit masks give O(1) membership and
    intersection tests in search-heavy code.  Instances are immutable.
    """

    __slots__ = (
        "n_points",
        "n_lines",
        "points_of_line",
        "lines_of_point",
        "point_mask_of_line",
        "line_mask_of_point",
        "_collinear_masks",
        "_dist",
    )

    def __init__(self, n_points: int, points_of_line):
        # coerce to plain ints: bitmask arithmetic must not inherit fixed-width
        # numpy integers from callers
        rows = tuple(tuple(sorted({int(p) for p in r})) for r in points_of_line)
        self.n_points = int(n_points)
        self.n_lines = len(rows)
        self.points_of_line = rows
        lines_of_point = [[] for _ in range(n_points)]
        for j, row in enumerate(rows):
            for p in row:
                if not 0 <= p < n_points:
                    raise ValueError(f"line {j} has out-of-range point {p}")
                lines_of_point[p].append(j)
        self.lines_of_point = tuple(tuple(ls) for ls in lines_of_point)
        self.point_mask_of_line = tuple(_mask(r) for r in rows)
        self.line_mask_of_point = tuple(_mask(r) for r in self.lines_of_point)
        self._collinear_masks = None
        self._dist = None

    @property
    def n_vertices(self) -> int:
        return self.n_points + self.n_lines

    def incident(self, point: int, line: int) -> bool:
        return bool(self.line_mask_of_point[point] >> line & 1)

    def collinear_masks(self) -> tuple[int, ...]:
        """Per point: bitmask of the *other* points sharing a line with it."""
        if self._collinear_masks is None:
            masks = []
            for p in range(self.n_points):
                m = 0
                for j in self.lines_of_point[p]:
                    m |= self.point_mask_of_line[j]
                masks.append(m & ~(1 << p))
            self._collinear_masks = tuple(masks)
        return self._collinear_masks

    def is_partial_linear(self) -> bool:
        """Any two distinct points lie on at most one common line."""
        for j, k in itertools.combinations(range(self.n_lines), 2):
            if (self.point_mask_of_line[j] & self.point_mask_of_line[k]).bit_count() > 1:
                return False
        return True

    def dual(self) -> "Incidence":
        return Incidence(self.n_lines, self.lines_of_point)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Incidence)
            and self.n_points == other.n_points
            and self.points_of_line == other.points_of_line
        )

    def __hash__(self):
        return hash((self.n_points, self.points_of_line))

    def __repr__(self) -> str:
        return f"Incidence(points={self.n_points}, lines={self.n_lines})"


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def dual(inc: Incidence) -> Incidence:
    """Swap the roles of points and lines; an involution."""
    return inc.dual()


@dataclass(frozen=True)
class PlaneContext:
    """Annotations a plane carries beyond raw incidence.

    For affine and biaffine planes this records the projective embedding:
    which ambient line plays the line at infinity, the direction (ambient
    point on that line) of every plane line, and, for biaffine planes, the
    partition of points into non-adjacency classes left by the removed
    parallel class.
    """

    kind: str  # "projective" | "affine" | "biaffine"
    inc: Incidence
    q: int
    ambient: Incidence | None = None
    point_map: tuple[int, ...] | None = None  # plane point -> ambient point
    line_map: tuple[int, ...] | None = None  # plane line -> ambient line
    line_at_infinity: int | None = None
    direction_of_line: tuple[int, ...] | None = None  # per line, ambient point id
    removed_direction: int | None = None  # biaffine only
    class_of_point: tuple[int, ...] | None = None  # biaffine only, ids 0..q-1

    def directions(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.direction_of_line)))

    def lines_with_direction(self, d: int) -> tuple[int, ...]:
        return tuple(j for j, dj in enumerate(self.direction_of_line) if dj == d)

    def points_in_class(self, c: int) -> tuple[int, ...]:
        return tuple(i for i, ci in enumerate(self.class_of_point) if ci == c)


def projective_plane(q: int) -> tuple[Incidence, PlaneContext]:
    """PG(2,q): points/lines are normalized homogeneous triples over GF(q).

    Normalization scales the last nonzero coordinate to 1; indices follow the
    lexicographic order of the coordinate triples.  A point lies on a line iff
    the bilinear form x*u + y*v + z*w vanishes.
    """
    f = field_for_order(q)
    triples = _normalized_triples(q)
    P = np.array(triples, dtype=np.int64)
    add, mul = f.add_table, f.mul_table
    # dot[i, j] = sum_k P[i,k] * P[j,k] over GF(q), via table lookups
    t0 = mul[P[:, None, 0], P[None, :, 0]]
    t1 = mul[P[:, None, 1], P[None, :, 1]]
    t2 = mul[P[:, None, 2], P[None, :, 2]]
    dot = add[add[t0, t1], t2]
    n = len(triples)
    points_of_line = [tuple(np.nonzero(dot[:, j] == 0)[0]) for j in range(n)]
    inc = Incidence(n, points_of_line)
    ctx = PlaneContext(kind="projective", inc=inc, q=q)
    return inc, ctx


def _normalized_triples(q: int) -> list[tuple[int, int, int]]:
    pts = [(a, b, 1) for a in range(q) for b in range(q)]
    pts += [(a, 1, 0) for a in range(q)]
    pts.append((1, 0, 0))
    pts.sort()
    return pts


def affine_from_projective(pg: Incidence, ell_inf: int) -> tuple[Incidence, PlaneContext]:
    """Delete a line (and its points) from a projective plane.

    Keeps the relative order of surviving indices.  Each surviving line gets
    a direction: the ambient point where it met the deleted line.
    """
    if not 0 <= ell_inf < pg.n_lines:
        raise ValueError(f"line index {ell_inf} out of range")
    q = len(pg.points_of_line[0]) - 1
    inf_mask = pg.point_mask_of_line[ell_inf]
    point_map = [p for p in range(pg.n_points) if not inf_mask >> p & 1]
    point_idx = {p: i for i, p in enumerate(point_map)}
    line_map = [j for j in range(pg.n_lines) if j != ell_inf]
    rows = []
    directions = []
    for j in line_map:
        rows.append(tuple(point_idx[p] for p in pg.points_of_line[j] if not inf_mask >> p & 1))
        on_inf = pg.point_mask_of_line[j] & inf_mask
        directions.append(on_inf.bit_length() - 1)  # the unique common point
    inc = Incidence(len(point_map), rows)
    ctx = PlaneContext(
        kind="affine",
        inc=inc,
        q=q,
        ambient=pg,
        point_map=tuple(point_map),
        line_map=tuple(line_map),
        line_at_infinity=ell_inf,
        direction_of_line=tuple(directions),
    )
    return inc, ctx


def biaffine_from_affine(af: PlaneContext, direction: int) -> tuple[Incidence, PlaneContext]:
    """Remove one parallel class from an affine plane.

    The removed lines become the non-adjacency classes: class ids follow the
    affine index order of the removed lines.
    """
    if af.kind != "affine":
        raise ValueError(f"expected an affine context, got {af.kind!r}")
    if direction not in af.direction_of_line:
        raise ValueError(f"{direction} is not a direction of this plane")
    inc0 = af.inc
    removed = [j for j, d in enumerate(af.direction_of_line) if d == direction]
    kept = [j for j, d in enumerate(af.direction_of_line) if d != direction]
    class_of_point = [-1] * inc0.n_points
    for cid, j in enumerate(removed):
        for p in inc0.points_of_line[j]:
            class_of_point[p] = cid
    inc = Incidence(inc0.n_points, [inc0.points_of_line[j] for j in kept])
    ctx = PlaneContext(
        kind="biaffine",
        inc=inc,
        q=af.q,
        ambient=af.ambient,
        point_map=af.point_map,
        line_map=tuple(af.line_map[j] for j in kept),
        line_at_infinity=af.line_at_infinity,
        direction_of_line=tuple(af.direction_of_line[j] for j in kept),
        removed_direction=direction,
        class_of_point=tuple(class_of_point),
    )
    return inc, ctx


def affine_plane(q: int) -> tuple[Incidence, PlaneContext]:
    """AG(2,q) with the canonical choice: delete the first projective line."""
    pg, _ = projective_plane(q)
    return affine_from_projective(pg, 0)


def biaffine_plane(q: int) -> tuple[Incidence, PlaneContext]:
    """BG(2,q): the canonical affine plane minus its first parallel class."""
    _, af = affine_plane(q)
    return biaffine_from_affine(af, min(af.direction_of_line))


def grid_gq(s: int) -> Incidence:
    """The (s+1) x (s+1) grid: points (i,j), lines h_a (rows j=a) and v_a
    (columns i=a), 1 <= a <= s+1.  Point (i,j) has index (i-1)*(s+1)+(j-1);
    h_a comes before v_a in the line order."""
    if s < 1:
        raise ValueError("grid parameter must be >= 1")
    n = s + 1
    h_lines = [tuple((i - 1) * n + (a - 1) for i in range(1, n + 1)) for a in range(1, n + 1)]
    v_lines = [tuple((a - 1) * n + (i - 1) for i in range(1, n + 1)) for a in range(1, n + 1)]
    return Incidence(n * n, h_lines + v_lines)


def grid_point(s: int, i: int, j: int) -> int:
    """Index of grid point (i,j), 1-based coordinates."""
    return (i - 1) * (s + 1) + (j - 1)


def grid_vline(s: int, a: int) -> int:
    """Index of the column line v_a, 1-based."""
    return (s + 1) + (a - 1)


def pg3(q: int) -> Incidence:
    """PG(3,q): all points and all lines, deterministically indexed.

    Points are normalized 4-tuples (last nonzero coordinate 1) in
    lexicographic order; lines are sorted by their point-index sets.
    """
    f = field_for_order(q)
    quads = _normalized_quads(q)
    index = {t: i for i, t in enumerate(quads)}
    n = len(quads)
    add, mul = f.add_table, f.mul_table

    def normalize(v):
        for k in range(3, -1, -1):
            if v[k]:
                s = f.inv(v[k])
                return tuple(int(mul[c, s]) for c in v)
        raise ValueError("zero vector")

    # every line is generated once: joined[i] records points already on a
    # common line with i, so only fresh pairs spawn a line computation
    joined = [0] * n
    lines = []
    for i in range(n):
        a = quads[i]
        for j in range(i + 1, n):
            if joined[i] >> j & 1:
                continue
            b = quads[j]
            pts = [j]
            for lam in range(q):
                c = normalize(tuple(int(add[a[k], mul[b[k], lam]]) for k in range(4)))
                pts.append(index[c])
            pts.sort()
            lines.append(tuple(pts))
            for u_idx in range(q + 1):
                for v_idx in range(u_idx + 1, q + 1):
                    joined[pts[u_idx]] |= 1 << pts[v_idx]
    expected = (q * q + 1) * (q * q + q + 1)
    if len(lines) != expected:
        raise AssertionError(f"PG(3,{q}): got {len(lines)} lines, expected {expected}")
    lines.sort()
    return Incidence(n, lines)


def _normalized_quads(q: int) -> list[tuple[int, int, int, int]]:
    quads = [(a, b, c, 1) for a in range(q) for b in range(q) for c in range(q)]
    quads += [(a, b, 1, 0) for a in range(q) for b in range(q)]
    quads += [(a, 1, 0, 0) for a in range(q)]
    quads.append((1, 0, 0, 0))
    quads.sort()
    return quads


# Alternating nondegenerate form on GF(q)^4: B(x,y) = x0*y1 - x1*y0 + x2*y3 - x3*y2.
SYMPLECTIC_FORM = ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))


@dataclass(frozen=True, repr=False)
class SymplecticSpace:
    """PG(3,q) together with the generalized quadrangle of its null polarity.

    ``wq`` keeps every point of PG(3,q) but only the totally isotropic lines;
    ``polar`` maps each point P to the sorted point set of the plane
    {X : B(P,X) = 0}, which always contains P itself.
    """

    field: FiniteField
    pg3: Incidence
    wq: Incidence
    wq_line_map: tuple[int, ...]  # wq line -> pg3 line
    polar: tuple[tuple[int, ...], ...]
    form: tuple = SYMPLECTIC_FORM

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self) -> str:
        return f"SymplecticSpace(q={self.q})"


def w_q(q: int) -> SymplecticSpace:
    """The symplectic generalized quadrangle of order (q,q).

    Its lines are the PG(3,q) lines on which the alternating form vanishes;
    since the form is alternating, a line spanned by a and b is totally
    isotropic iff B(a,b) = 0.
    """
    f = field_for_order(q)
    space = pg3(q)
    quads = np.array(_normalized_quads(q), dtype=np.int64)
    add, mul, neg = f.add_table, f.mul_table, f.neg_table

    def form_matrix():
        x, y = quads[:, None, :], quads[None, :, :]
        t01 = mul[x[..., 0], y[..., 1]]
        t10 = neg[mul[x[..., 1], y[..., 0]]]
        t23 = mul[x[..., 2], y[..., 3]]
        t32 = neg[mul[x[..., 3], y[..., 2]]]
        return add[add[t01, t10], add[t23, t32]]

    B = form_matrix()
    iso_lines = []
    line_map = []
    for j, row in enumerate(space.points_of_line):
        a, b = row[0], row[1]
        if B[a, b] == 0:
            iso_lines.append(row)
            line_map.append(j)
    wq = Incidence(space.n_points, iso_lines)
    expected = (q + 1) * (q * q + 1)
    if wq.n_lines != expected:
        raise AssertionError(f"W({q}): got {wq.n_lines} isotropic lines, expected {expected}")
    polar = tuple(tuple(np.nonzero(B[i] == 0)[0]) for i in range(space.n_points))
    return SymplecticSpace(field=f, pg3=space, wq=wq, wq_line_map=tuple(line_map), polar=polar)


@dataclass(frozen=True)
class GqReport:
    """Outcome of the generalized-quadrangle axiom check."""

    ok: bool
    s: int | None = None
    t: int | None = None
    axiom: str | None = None
    witness: tuple | None = None

    @property
    def order(self) -> tuple[int, int] | None:
        return (self.s, self.t) if self.ok else None


def check_gq(inc: Incidence) -> GqReport:
    """Verify the three generalized-quadrangle axioms.

    GQ1: every point on t+1 lines, two points on at most one common line.
    GQ2: every line with s+1 points, two lines sharing at most one point.
    GQ3: for each non-incident (P, l) exactly one point of l collinear with P.
    Returns the order (s,t) or the first violated axiom with a witness.
    """
    if inc.n_points == 0 or inc.n_lines == 0:
        return GqReport(ok=False, axiom="GQ1", witness=("empty structure",))
    deg = len(inc.lines_of_point[0])
    for p in range(inc.n_points):
        if len(inc.lines_of_point[p]) != deg:
            return GqReport(ok=False, axiom="GQ1", witness=("point degree", p))
    for p1, p2 in itertools.combinations(range(inc.n_points), 2):
        if (inc.line_mask_of_point[p1] & inc.line_mask_of_point[p2]).bit_count() > 1:
            return GqReport(ok=False, axiom="GQ1", witness=("two points on two lines", p1, p2))
    size = len(inc.points_of_line[0])
    for j in range(inc.n_lines):
        if len(inc.points_of_line[j]) != size:
            return GqReport(ok=False, axiom="GQ2", witness=("line size", j))
    for j1, j2 in itertools.combinations(range(inc.n_lines), 2):
        if (inc.point_mask_of_line[j1] & inc.point_mask_of_line[j2]).bit_count() > 1:
            return GqReport(ok=False, axiom="GQ2", witness=("two lines with two points", j1, j2))
    s, t = size - 1, deg - 1
    if s < 1 or t < 1:
        return GqReport(ok=False, axiom="GQ2", witness=("degenerate order", s, t))
    coll = inc.collinear_masks()
    for p in range(inc.n_points):
        pm = coll[p] | (1 << p)
        for j in range(inc.n_lines):
            if inc.line_mask_of_point[p] >> j & 1:
                continue
            hits = (pm & inc.point_mask_of_line[j]).bit_count()
            if hits != 1:
                return GqReport(ok=False, axiom="GQ3", witness=(p, j, hits))
    return GqReport(ok=True, s=s, t=t)


def triad_centers(gq: Incidence, x: int, y: int, z: int) -> int:
    """Number of points collinear with each of three pairwise non-collinear points."""
    coll = gq.collinear_masks()
    if len({x, y, z}) < 3:
        raise ValueError("triad points must be distinct")
    for a, b in ((x, y), (x, z), (y, z)):
        if coll[a] >> b & 1:
            raise ValueError(f"points {a} and {b} are collinear; not a triad")
    return (coll[x] & coll[y] & coll[z]).bit_count()
