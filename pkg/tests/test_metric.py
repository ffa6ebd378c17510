"""Distances, signatures, resolving verdicts, and plane statistics.

The frozen values for the derived cases were computed with the brute-force
oracle embedded below (exhaustive subset enumeration over the cached distance
matrix), which is independent of the verification path under test.
"""

import itertools
import random

import numpy as np
import pytest

from geomdim.geometry import dual, grid_gq
from geomdim.metric import (
    VertexSet,
    bfs_distances,
    diagnostics,
    distance_matrix,
    is_resolving,
    is_semi_resolving,
    resolving_set_inequalities,
    signature,
)


def brute_first_resolving(inc, k):
    """Oracle: lexicographically first resolving k-subset, by enumeration."""
    M = distance_matrix(inc)
    N = inc.n_vertices
    for comb in itertools.combinations(range(N), k):
        if len(np.unique(M[:, comb], axis=0)) == N:
            return comb
    return None


def as_vertex_set(inc, comb):
    return VertexSet(
        tuple(v for v in comb if v < inc.n_points),
        tuple(v - inc.n_points for v in comb if v >= inc.n_points),
    )


def test_bfs_basics(planes):
    inc, _ = planes("affine", 3)
    d = bfs_distances(inc, 0)
    assert d[0] == 0
    j = inc.lines_of_point[0][0]
    assert d[inc.n_points + j] == 1


def test_affine_line_distances(planes):
    # parallel lines are at distance 4, intersecting ones at 2
    inc, ctx = planes("affine", 3)
    n = inc.n_points
    d = bfs_distances(inc, n + 0)
    for j in range(1, inc.n_lines):
        expected = 4 if ctx.direction_of_line[j] == ctx.direction_of_line[0] else 2
        assert d[n + j] == expected


def test_matrix_matches_bfs(planes):
    inc, _ = planes("biaffine", 4)
    M = distance_matrix(inc)
    for v in (0, 7, inc.n_points + 3, inc.n_vertices - 1):
        assert list(M[v]) == bfs_distances(inc, v)


def test_disconnected_reported():
    from geomdim.geometry import Incidence

    inc = Incidence(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError, match="disconnected"):
        bfs_distances(inc, 0)
    with pytest.raises(ValueError):
        distance_matrix(inc)


def test_signature_parity(planes):
    inc, _ = planes("biaffine", 4)
    M = distance_matrix(inc)
    n = inc.n_points
    assert (M[:n, :n] % 2 == 0).all()
    assert (M[n:, n:] % 2 == 0).all()
    assert (M[:n, n:] % 2 == 1).all()


def test_resolving_trivial_cases(planes):
    inc, _ = planes("affine", 3)
    everything = VertexSet(tuple(range(inc.n_points)), tuple(range(inc.n_lines)))
    assert is_resolving(inc, everything)
    v = is_resolving(inc, VertexSet())
    assert not v and v.witness == (0, 1)


def test_bg3_brute_force_subset(planes):
    # oracle: first resolving 4-subset of the order-3 biaffine plane
    inc, _ = planes("biaffine", 3)
    comb = brute_first_resolving(inc, 4)
    assert comb == (0, 3, 10, 12)  # frozen from the enumeration oracle
    S = as_vertex_set(inc, comb)
    assert S == VertexSet((0, 3), (1, 3))
    assert is_resolving(inc, S)
    # nothing smaller resolves
    assert brute_first_resolving(inc, 3) is None


def test_witness_is_lex_first(planes):
    inc, _ = planes("biaffine", 3)
    # delete one landmark from a just-resolving set; recompute expected
    # witness directly from signatures
    S = VertexSet((0, 3), (1,))
    v = is_resolving(inc, S)
    assert not v
    M = distance_matrix(inc)
    idx = S.vertex_indices(inc)
    sigs = [tuple(M[u, idx]) for u in range(inc.n_vertices)]
    expected = min(
        (u, w)
        for u, w in itertools.combinations(range(inc.n_vertices), 2)
        if sigs[u] == sigs[w]
    )
    assert v.witness == expected


def test_semi_resolving(planes, symplectic):
    inc, _ = planes("biaffine", 3)
    all_points = VertexSet(tuple(range(inc.n_points)), ())
    assert is_semi_resolving(inc, all_points, "points")
    assert not is_semi_resolving(inc, VertexSet(), "points")
    with pytest.raises(ValueError):
        is_semi_resolving(inc, all_points, "vertices")
    # a set may separate all points yet not all lines
    wq = symplectic(2).wq
    pts = VertexSet(tuple(range(wq.n_points)), ())
    assert is_semi_resolving(wq, pts, "points")


def test_signature_layout(planes):
    inc, _ = planes("affine", 3)
    S = VertexSet((2, 5), (1,))
    sig = signature(inc, 2, S)
    assert sig[0] == 0  # own coordinate first, point block before line block
    assert len(sig) == 3


def test_lemma_two_secant_lines_resolved(planes):
    # a line meeting the landmark points twice has a unique line signature;
    # dually for points on two landmark lines
    rng = random.Random(99)
    inc, _ = planes("biaffine", 4)
    M = distance_matrix(inc)
    n = inc.n_points
    for _ in range(100):
        pts = tuple(rng.sample(range(n), rng.randint(2, 6)))
        lns = tuple(rng.sample(range(inc.n_lines), rng.randint(0, 4)))
        S = VertexSet(pts, lns)
        idx = S.vertex_indices(inc)
        line_sigs = [tuple(M[n + j, idx]) for j in range(inc.n_lines)]
        pm = 0
        for p in pts:
            pm |= 1 << p
        for j in range(inc.n_lines):
            if (inc.point_mask_of_line[j] & pm).bit_count() >= 2:
                assert line_sigs.count(line_sigs[j]) == 1
        lm = 0
        for l in lns:
            lm |= 1 << l
        point_sigs = [tuple(M[p, idx]) for p in range(n)]
        for p in range(n):
            if (inc.line_mask_of_point[p] & lm).bit_count() >= 2:
                assert point_sigs.count(point_sigs[p]) == 1


def test_diagnostics_empty_set(planes):
    _, ctx = planes("biaffine", 5)
    d = diagnostics(ctx, VertexSet())
    assert d.u == 5 and d.c == 5
    assert d.delta == 25 and d.delta_projective == 25 + 5 + 1


def test_diagnostics_one_class_covered(planes):
    _, ctx = planes("biaffine", 5)
    d0 = ctx.directions()[0]
    S = VertexSet((), ctx.lines_with_direction(d0))
    d = diagnostics(ctx, S)
    assert d.u == 4  # one direction covered
    assert d.c == 5


def test_diagnostics_affine(planes):
    _, ctx = planes("affine", 4)
    d = diagnostics(ctx, VertexSet())
    assert d.u == 5 and d.c is None
    assert d.delta == 20 and d.delta_projective == 21


def test_diagnostics_rejects_projective(planes):
    _, ctx = planes("projective", 3)
    with pytest.raises(ValueError):
        diagnostics(ctx, VertexSet())


def test_inequalities_on_brute_force_sets(planes):
    # every resolving set of the order-3 biaffine plane found by enumeration
    # satisfies the size inequalities
    inc, ctx = planes("biaffine", 3)
    M = distance_matrix(inc)
    N = inc.n_vertices
    checked = 0
    for comb in itertools.combinations(range(N), 4):
        if len(np.unique(M[:, comb], axis=0)) != N:
            continue
        S = as_vertex_set(inc, comb)
        assert all(resolving_set_inequalities(ctx, S).values()), S
        checked += 1
    assert checked > 0


def test_vertex_set_validation(planes):
    inc, _ = planes("affine", 3)
    with pytest.raises(ValueError):
        VertexSet((99,), ()).vertex_indices(inc)
    assert VertexSet((3, 1, 1), ()).point_part == (1, 3)
