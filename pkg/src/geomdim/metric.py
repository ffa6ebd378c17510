"""Distances in the bipartite incidence graph, resolving-set verification,
and the covering/blocking statistics used by the plane characterizations.

Vertices are numbered points first (0..n_points-1), then lines offset by
n_points.  A vertex's signature with respect to a landmark set is its tuple
of distances to the set's points (in index order) followed by its lines.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .geometry import Incidence, PlaneContext

# All-pairs distance matrices are cached on the structure up to this many
# vertices; larger structures fall back to per-landmark BFS.
MATRIX_CACHE_LIMIT = 4096


@dataclass(frozen=True)
class VertexSet:
    """A set of landmark vertices, split into its point and line parts."""

    point_part: tuple[int, ...] = ()
    line_part: tuple[int, ...] = ()

    def __post_init__(self):
        pp = tuple(sorted({int(p) for p in self.point_part}))
        lp = tuple(sorted({int(l) for l in self.line_part}))
        object.__setattr__(self, "point_part", pp)
        object.__setattr__(self, "line_part", lp)

    def __len__(self) -> int:
        return len(self.point_part) + len(self.line_part)

    def vertex_indices(self, inc: Incidence) -> list[int]:
        """Landmarks as graph-vertex indices, points first."""
        for p in self.point_part:
            if not 0 <= p < inc.n_points:
                raise ValueError(f"point index {p} out of range")
        for l in self.line_part:
            if not 0 <= l < inc.n_lines:
                raise ValueError(f"line index {l} out of range")
        return list(self.point_part) + [inc.n_points + l for l in self.line_part]

    def union(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.point_part + other.point_part, self.line_part + other.line_part)


def vertex_name(inc: Incidence, v: int) -> str:
    """Human-readable vertex label: P<i> for points, L<j> for lines."""
    return f"P{v}" if v < inc.n_points else f"L{v - inc.n_points}"


def _adjacency(inc: Incidence) -> list[list[int]]:
    n = inc.n_points
    adj = [[n + j for j in inc.lines_of_point[p]] for p in range(n)]
    adj += [list(inc.points_of_line[j]) for j in range(inc.n_lines)]
    return adj


def bfs_distances(inc: Incidence, vertex: int) -> list[int]:
    """Exact shortest-path distances from one vertex to every vertex.

    Raises on disconnected structures rather than reporting infinities.
    """
    n_all = inc.n_vertices
    if not 0 <= vertex < n_all:
        raise ValueError(f"vertex {vertex} out of range")
    adj = _adjacency(inc)
    dist = [-1] * n_all
    dist[vertex] = 0
    queue = deque([vertex])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    if min(dist) < 0:
        bad = dist.index(-1)
        raise ValueError(f"structure is disconnected: {vertex_name(inc, bad)} unreachable")
    return dist


def distance_matrix(inc: Incidence) -> np.ndarray:
    """All-pairs distances, cached on the structure for <= 4096 vertices.

    Computed by boolean matrix powers of the bipartite adjacency matrix;
    raises if the incidence graph is disconnected.
    """
    if inc._dist is not None:
        return inc._dist
    n_all = inc.n_vertices
    if n_all > MATRIX_CACHE_LIMIT:
        raise ValueError(f"{n_all} vertices exceeds the distance-matrix cache limit")
    n = inc.n_points
    A = np.zeros((n_all, n_all), dtype=bool)
    for j, row in enumerate(inc.points_of_line):
        for p in row:
            A[p, n + j] = True
            A[n + j, p] = True
    dist = np.full((n_all, n_all), -1, dtype=np.int16)
    np.fill_diagonal(dist, 0)
    reach = np.eye(n_all, dtype=bool)
    d = 0
    while True:
        new_reach = reach @ A | reach
        fresh = new_reach & ~reach
        d += 1
        if not fresh.any():
            break
        dist[fresh] = d
        reach = new_reach
    if (dist < 0).any():
        u = int(np.argwhere(dist < 0)[0][0])
        raise ValueError(f"structure is disconnected: {vertex_name(inc, u)} in a separate component")
    dist.flags.writeable = False
    inc._dist = dist
    return dist


def signature_matrix(inc: Incidence, S: VertexSet, threads: int = 1) -> np.ndarray:
    """Row v = distances of vertex v to every landmark of S."""
    landmarks = S.vertex_indices(inc)
    if inc.n_vertices <= MATRIX_CACHE_LIMIT:
        return distance_matrix(inc)[:, landmarks]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cols = list(pool.map(lambda v: bfs_distances(inc, v), landmarks))
    else:
        cols = [bfs_distances(inc, v) for v in landmarks]
    return np.array(cols, dtype=np.int16).T


def signature(inc: Incidence, vertex: int, S: VertexSet) -> tuple[int, ...]:
    """Distance signature of one vertex with respect to S."""
    return tuple(int(x) for x in signature_matrix(inc, S)[vertex])


@dataclass(frozen=True)
class ResolveVerdict:
    resolving: bool
    witness: tuple[int, int] | None = None  # lexicographically first colliding pair

    def __bool__(self) -> bool:
        return self.resolving


def _first_collision(sig: np.ndarray, rows: np.ndarray) -> tuple[int, int] | None:
    """Lexicographically smallest (u, v), u < v, with equal signature rows."""
    order = np.lexsort(sig.T[::-1])
    sorted_sig = sig[order]
    dup = np.nonzero((np.diff(sorted_sig, axis=0) == 0).all(axis=1))[0]
    if len(dup) == 0:
        return None
    best = None
    # group duplicates and take the two smallest vertex ids per group
    k = 0
    while k < len(dup):
        start = dup[k]
        end = start + 1
        while k < len(dup) and dup[k] == end - 1:
            end += 1
            k += 1
        members = sorted(int(rows[i]) for i in order[start:end])
        pair = (members[0], members[1])
        if best is None or pair < best:
            best = pair
    return best


def is_resolving(inc: Incidence, S: VertexSet, threads: int = 1) -> ResolveVerdict:
    """True iff all vertex signatures with respect to S are pairwise distinct.

    On failure, reports the lexicographically first colliding vertex pair
    (vertex order: points, then lines).
    """
    if inc.n_vertices < 2:
        return ResolveVerdict(True)
    if len(S) == 0:
        return ResolveVerdict(False, (0, 1))
    sig = signature_matrix(inc, S, threads=threads)
    pair = _first_collision(sig, np.arange(inc.n_vertices))
    return ResolveVerdict(pair is None, pair)


def is_semi_resolving(inc: Incidence, S: VertexSet, side: str, threads: int = 1) -> ResolveVerdict:
    """Resolving restricted to one side: all points or all lines distinct."""
    if side not in ("points", "lines"):
        raise ValueError(f"side must be 'points' or 'lines', got {side!r}")
    n = inc.n_points
    rows = np.arange(0, n) if side == "points" else np.arange(n, inc.n_vertices)
    if len(rows) < 2:
        return ResolveVerdict(True)
    if len(S) == 0:
        return ResolveVerdict(False, (int(rows[0]), int(rows[1])))
    sig = signature_matrix(inc, S, threads=threads)[rows]
    pair = _first_collision(sig, rows)
    return ResolveVerdict(pair is None, pair)


# ---------------------------------------------------------------------------
# covering/blocking statistics on annotated planes


def secant_counts(inc: Incidence, S: VertexSet) -> list[int]:
    """Per line: how many landmark points it contains."""
    pm = 0
    for p in S.point_part:
        pm |= 1 << p
    return [(m & pm).bit_count() for m in inc.point_mask_of_line]


def cover_counts(inc: Incidence, S: VertexSet) -> list[int]:
    """Per point: how many landmark lines pass through it."""
    lm = 0
    for l in S.line_part:
        lm |= 1 << l
    return [(m & lm).bit_count() for m in inc.line_mask_of_point]


@dataclass(frozen=True)
class Diagnostics:
    """Covering/blocking statistics of a landmark set on an annotated plane.

    ``u``: uncovered directions; ``c``: unblocked non-adjacency classes
    (None on affine planes); ``delta``: plane lines skew to the point part;
    ``delta_projective``: skew count in the ambient projective plane, where
    the line at infinity and, on biaffine planes, the class lines also count.
    """

    q: int
    u: int
    c: int | None
    delta: int
    delta_projective: int
    tangents_uncovered_direction: int
    one_covered_points: int


def diagnostics(ctx: PlaneContext, S: VertexSet) -> Diagnostics:
    """Exact uncovered/unblocked/skew/tangent tallies for S on ctx."""
    if ctx.kind not in ("affine", "biaffine"):
        raise ValueError(f"diagnostics need an affine or biaffine plane, got {ctx.kind!r}")
    inc = ctx.inc
    sec = secant_counts(inc, S)
    covered_dirs = {ctx.direction_of_line[j] for j in S.line_part}
    u = len(ctx.directions()) - len(covered_dirs)
    delta = sum(1 for s in sec if s == 0)
    tangents_uncov = sum(
        1
        for j, s in enumerate(sec)
        if s == 1 and ctx.direction_of_line[j] not in covered_dirs
    )
    cov = cover_counts(inc, S)
    one_covered = sum(1 for c in cov if c == 1)
    if ctx.kind == "biaffine":
        blocked = {ctx.class_of_point[p] for p in S.point_part}
        c = ctx.q - len(blocked)
        # ambient skew lines: plane lines + the c unblocked class lines + the
        # line at infinity (the point part lives inside the plane)
        delta_proj = delta + c + 1
    else:
        c = None
        delta_proj = delta + 1
    return Diagnostics(
        q=ctx.q,
        u=u,
        c=c,
        delta=delta,
        delta_projective=delta_proj,
        tangents_uncovered_direction=tangents_uncov,
        one_covered_points=one_covered,
    )


def resolving_set_inequalities(ctx: PlaneContext, S: VertexSet) -> dict[str, bool]:
    """Size inequalities every resolving set of a plane must satisfy.

    All comparisons are exact integer arithmetic (cross-multiplied where the
    bound is rational).  Callers are expected to pass sets already verified
    resolving; the returned dict maps check names to verdicts.
    """
    q = ctx.q
    np_, nl = len(S.point_part), len(S.line_part)
    total = np_ + nl
    out: dict[str, bool] = {}
    if ctx.kind == "affine":
        if total <= 3 * q - 4:
            out["line_part_at_least_2q_minus_3"] = nl >= 2 * q - 3
        return out
    if ctx.kind != "biaffine":
        raise ValueError("inequalities are defined for affine and biaffine planes")
    d = diagnostics(ctx, S)
    u, c = d.u, d.c
    # |P_S| >= q - |S|/(q-1) and dually, cross-multiplied by (q-1)
    out["point_part_vs_total"] = (q - 1) * np_ >= q * (q - 1) - total
    out["line_part_vs_total"] = (q - 1) * nl >= q * (q - 1) - total
    # |P_S| >= 2(q-1) * u/(u+1) and dually for c
    out["point_part_vs_uncovered"] = (u + 1) * np_ >= 2 * (q - 1) * u
    out["line_part_vs_unblocked"] = (c + 1) * nl >= 2 * (q - 1) * c
    out["skew_bound"] = d.delta <= nl + q - u + 1
    out["skew_bound_coarse"] = d.delta <= nl + q
    return out
