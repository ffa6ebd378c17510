"""Every explicit construction: exact sizes, verified outputs, and the
documented shape properties."""

import itertools

import pytest

from geomdim.blocking import analyze, min_blocking
from geomdim.characterizations import verify_projective
from geomdim.constructions import (
    ConstructionError,
    PointSrsDetail,
    _point_srs_search,
    affine_basis,
    bc_resolving,
    biaffine_3q6,
    find_incidence_isomorphism,
    gq_line_srs_odd,
    grid_resolving,
    grid_size_formula,
    lift_affine,
    wq_point_srs,
    wq_resolving,
)
from geomdim.geometry import PlaneContext, dual, grid_gq
from geomdim.metric import VertexSet, is_resolving, is_semi_resolving

from conftest import long_test


# ---------------------------------------------------------------------------
# affine


@pytest.mark.parametrize("variant", [1, 2, 3, 4])
def test_affine_basis_q9(variant, planes):
    # below the guaranteed order the constructor still verifies empirically
    _, ctx = planes("affine", 9)
    S = affine_basis(9, variant, ctx)
    assert len(S) == 3 * 9 - 4


def test_affine_basis_variant_structure(planes):
    _, ctx = planes("affine", 9)
    sets = [affine_basis(9, v, ctx) for v in (1, 2, 3, 4)]
    tagged = [
        {("P", p) for p in s.point_part} | {("L", l) for l in s.line_part} for s in sets
    ]
    core = set.intersection(*tagged)
    assert len(core) == 3 * 9 - 5  # the common core, one element short
    for t in tagged:
        assert len(t - core) == 1
    # variant 3 adds the second point of the spine line
    inc = ctx.inc
    vclass = ctx.lines_with_direction(min(ctx.direction_of_line))
    second_point = inc.points_of_line[vclass[0]][1]
    assert second_point in sets[2].point_part


def test_affine_basis_rejects_bad_input(planes):
    with pytest.raises(ValueError):
        affine_basis(9, 5)
    with pytest.raises(ValueError):
        affine_basis(3, 1)


def test_lift_affine(planes):
    _, ctx = planes("affine", 9)
    S = affine_basis(9, 1, ctx)
    lifted = lift_affine(ctx, S)
    assert len(lifted) == 4 * 9 - 4
    assert len(lifted.point_part) == len(S.point_part) + 9  # adds q points
    pg_ctx = PlaneContext(kind="projective", inc=ctx.ambient, q=9)
    assert verify_projective(pg_ctx, lifted).all_ok


def test_lift_affine_requires_rich_direction(planes):
    inc, ctx = planes("affine", 3)
    # all points and almost all lines resolve, with one line per direction
    one_per_dir = tuple(ctx.lines_with_direction(d)[0] for d in ctx.directions())
    S = VertexSet(tuple(range(inc.n_points)), one_per_dir)
    if is_resolving(inc, S):
        with pytest.raises(ValueError, match="direction"):
            lift_affine(ctx, S)


def test_lift_affine_rejects_nonresolving(planes):
    _, ctx = planes("affine", 9)
    with pytest.raises(ValueError, match="resolve"):
        lift_affine(ctx, VertexSet())


# ---------------------------------------------------------------------------
# biaffine


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_biaffine_3q6_all_splits(q, planes):
    _, ctx = planes("biaffine", q)
    for t in range(1, q - 2):
        S = biaffine_3q6(q, t, ctx)
        assert len(S) == 3 * q - 6
        assert len(S.point_part) == q - 2 + t  # point count tracks the split
        assert is_resolving(ctx.inc, S)


def test_biaffine_3q6_diagnostics(planes):
    from geomdim.metric import diagnostics

    _, ctx = planes("biaffine", 5)
    d = diagnostics(ctx, biaffine_3q6(5, 1, ctx))
    assert d.u == 1 and d.c == 1  # one loose direction, one loose class


def test_biaffine_3q6_rejects_bad_t(planes):
    _, ctx = planes("biaffine", 5)
    with pytest.raises(ValueError):
        biaffine_3q6(5, 0, ctx)
    with pytest.raises(ValueError):
        biaffine_3q6(5, 3, ctx)


def test_bc_resolving(planes):
    inc, ctx = planes("biaffine", 3)
    _, actx = planes("affine", 3)
    tau, B = min_blocking(actx)  # affine blocking set blocks classes too
    assert analyze(inc, B).is_blocking
    # search a small covering line set that also covers every direction
    dirs = ctx.directions()
    cover = None
    for k in range(3, inc.n_lines + 1):
        for comb in itertools.combinations(range(inc.n_lines), k):
            cm = 0
            for l in comb:
                cm |= 1 << l
            if any(inc.line_mask_of_point[p] & cm == 0 for p in range(inc.n_points)):
                continue
            if {ctx.direction_of_line[l] for l in comb} == set(dirs):
                cover = comb
                break
        if cover:
            break
    S = bc_resolving(ctx, B, cover)
    assert len(S) == len(B) + len(cover) - 2
    assert is_resolving(inc, S)


def test_bc_resolving_rejects_nonblocking(planes):
    inc, ctx = planes("biaffine", 3)
    with pytest.raises(ValueError, match="block"):
        bc_resolving(ctx, (0,), tuple(range(inc.n_lines)))
    with pytest.raises(ValueError, match="cover"):
        bc_resolving(ctx, tuple(range(inc.n_points)), (0,))


# ---------------------------------------------------------------------------
# grids


@pytest.mark.parametrize("s,size", [(2, 3), (3, 5), (4, 6), (6, 9)])
def test_grid_sizes(s, size):
    assert grid_size_formula(s) == size
    S = grid_resolving(s)
    assert len(S) == size


@pytest.mark.parametrize("s", list(range(2, 13)))
def test_grid_verifies(s):
    inc = grid_gq(s)
    S = grid_resolving(s, inc)
    assert is_resolving(inc, S)
    assert len(S) == grid_size_formula(s)


def test_grid_s2_shape():
    # r=0, t=2: two diagonal points plus the last column line
    from geomdim.geometry import grid_point, grid_vline

    S = grid_resolving(2)
    assert S.point_part == (grid_point(2, 1, 2), grid_point(2, 1, 3))
    assert S.line_part == (grid_vline(2, 3),)
    with pytest.raises(ValueError):
        grid_resolving(1)


# ---------------------------------------------------------------------------
# the symplectic quadrangle


@pytest.mark.parametrize("q", [3, 4, 5])
def test_wq_point_srs(q, symplectic):
    sp = symplectic(q)
    S = wq_point_srs(q, sp)
    assert len(S) == 4 * q and not S.line_part
    assert is_semi_resolving(sp.wq, S, "points")


def test_wq_point_srs_detail(symplectic):
    sp = symplectic(3)
    detail = _point_srs_search(sp)
    assert isinstance(detail, PointSrsDetail)
    masks = [sp.wq.point_mask_of_line[a] for a in detail.lines]
    for ma, mb in itertools.combinations(masks, 2):
        assert ma & mb == 0  # four pairwise disjoint lines
    # before deletion: 4(q+1) = 4q+4 points
    assert sum(m.bit_count() for m in masks) == 4 * 3 + 4
    deleted_set = set(detail.deleted)
    assert len(deleted_set) == 4
    assert deleted_set.isdisjoint(detail.vertex_set.point_part)


@pytest.mark.parametrize("q", [3, 5])
def test_gq_line_srs_odd(q, symplectic):
    sp = symplectic(q)
    S = gq_line_srs_odd(q, sp)
    assert len(S) == 5 * q - 4
    assert len(S.line_part) == q - 3
    Q = dual(sp.wq)
    assert is_semi_resolving(Q, S, "points")
    # the line part, read in the primal quadrangle, is q-3 collinear points
    if S.line_part:
        line0_pts = set(sp.wq.points_of_line[0])
        assert set(S.line_part) <= line0_pts


def test_gq_line_srs_rejects_even():
    with pytest.raises(ValueError):
        gq_line_srs_odd(4)


@pytest.mark.parametrize("q,bound", [(3, 23), (5, 39)])
def test_wq_resolving_odd(q, bound, symplectic):
    sp = symplectic(q)
    S = wq_resolving(q, sp)
    assert len(S) <= bound  # 8q - 1
    assert is_resolving(sp.wq, S)


def test_wq_resolving_even(symplectic):
    sp = symplectic(4)
    S = wq_resolving(4, sp)
    assert len(S) <= 32  # 8q
    assert is_resolving(sp.wq, S)
    assert is_semi_resolving(sp.wq, VertexSet((), S.line_part), "lines")


def test_find_isomorphism_roundtrip(symplectic):
    # the dual of the grid quadrangle is a different structure; W(4) is
    # isomorphic to its dual, and the returned maps preserve incidence
    sp = symplectic(4)
    Q = dual(sp.wq)
    iso = find_incidence_isomorphism(Q, sp.wq)
    assert iso is not None
    pmap, lmap = iso
    assert sorted(pmap) == list(range(Q.n_points))
    assert sorted(lmap) == list(range(Q.n_lines))
    for j, row in enumerate(Q.points_of_line):
        assert tuple(sorted(pmap[p] for p in row)) == sp.wq.points_of_line[lmap[j]]


def test_find_isomorphism_rejects_mismatch():
    assert find_incidence_isomorphism(grid_gq(2), grid_gq(3)) is None
    assert find_incidence_isomorphism(grid_gq(3), dual(grid_gq(3))) is None


@long_test
def test_wq_resolving_q7(symplectic):
    sp = symplectic(7)
    S = wq_resolving(7, sp)
    assert len(S) <= 55
    assert is_resolving(sp.wq, S)
