"""Blocking-set census, extendability, exact affine covers, and the
tangent-count and quadratic index inequalities."""

import itertools
import random

import pytest

from geomdim.blocking import (
    analyze,
    extender_index_bounds_hold,
    k_extendable,
    metsch_check,
    min_blocking,
    tangent_bound_check,
)


def test_empty_set_census(planes):
    inc, _ = planes("projective", 3)
    rep = analyze(inc, ())
    assert not rep.is_blocking
    assert rep.delta == inc.n_lines
    assert all(i == 4 for i in rep.ind)  # q+1 skew lines through each point


def test_full_line_blocks(planes):
    inc, _ = planes("projective", 3)
    line = inc.points_of_line[0]
    rep = analyze(inc, line)
    assert rep.is_blocking and rep.delta == 0
    assert rep.essential == tuple(sorted(line))


def test_punctured_line(planes):
    inc, _ = planes("projective", 3)
    line = inc.points_of_line[0]
    rep = analyze(inc, line[1:])
    assert rep.delta == 3  # the other q lines through the deleted point


def test_k_extendable_basics(planes):
    inc, _ = planes("projective", 3)
    line = inc.points_of_line[0]
    assert k_extendable(inc, line, 0) == ()
    ext = k_extendable(inc, line[1:], 1)
    assert ext is not None and len(ext) == 1
    assert analyze(inc, tuple(line[1:]) + ext).is_blocking
    assert k_extendable(inc, line[1:], 0) is None
    with pytest.raises(ValueError):
        k_extendable(inc, line, -1)


def test_k_extendable_matches_bruteforce(planes):
    # smallest k from the candidate-restricted search equals the smallest k
    # from unrestricted enumeration over all point subsets
    inc, _ = planes("projective", 4)
    rng = random.Random(4242)
    masks = inc.point_mask_of_line

    def blocks(pts):
        pm = 0
        for p in pts:
            pm |= 1 << p
        return all(m & pm for m in masks)

    for _ in range(12):
        B = tuple(sorted(rng.sample(range(inc.n_points), 10)))
        restricted = next(k for k in range(8) if k_extendable(inc, B, k) is not None)
        brute = next(
            k
            for k in range(8)
            if any(
                blocks(B + extra)
                for extra in itertools.combinations(
                    [p for p in range(inc.n_points) if p not in B], k
                )
            )
        )
        assert restricted == brute


@pytest.mark.parametrize("q,tau", [(2, 3), (3, 5), (4, 7)])
def test_min_blocking_affine(q, tau, planes):
    inc, ctx = planes("affine", q)
    got, witness = min_blocking(ctx)
    assert got == tau  # 2q - 1
    assert analyze(inc, witness).is_blocking
    assert len(witness) == tau


def test_min_blocking_guards(planes):
    _, pctx = planes("projective", 3)
    with pytest.raises(ValueError):
        min_blocking(pctx)
    _, big = planes("affine", 5)
    with pytest.raises(ValueError):
        min_blocking(big)


def test_tangent_bound_on_line(planes):
    # a full line: every point on exactly q tangents, and q = 2q+1-(q+1)
    inc, _ = planes("projective", 4)
    assert tangent_bound_check(inc, inc.points_of_line[0]).ok


def test_tangent_bound_rejects_nonblocking(planes):
    inc, _ = planes("projective", 3)
    with pytest.raises(ValueError):
        tangent_bound_check(inc, (0, 1))


def test_tangent_bound_all_minimal_blocking_sets_pg23(planes):
    # exhaustive: every minimal blocking set of the order-3 projective plane
    inc, _ = planes("projective", 3)
    n = inc.n_points
    found = 0
    for size in range(4, n + 1):
        for comb in itertools.combinations(range(n), size):
            rep = analyze(inc, comb)
            if not rep.is_blocking or rep.essential != comb:
                continue
            found += 1
            assert tangent_bound_check(inc, comb).ok
    assert found > 0


def test_metsch_trivial_cases(planes):
    inc, _ = planes("projective", 3)
    assert metsch_check(inc, ()).ok  # value is exactly 1 at every point
    assert metsch_check(inc, inc.points_of_line[0]).ok  # 0 everywhere off B


@pytest.mark.parametrize("q", [4, 5, 7, 8])
def test_metsch_random_sets(q, planes):
    inc, _ = planes("projective", q)
    rng = random.Random(20_000 + q)
    for _ in range(250):
        size = rng.randint(0, 3 * q)
        pts = rng.sample(range(inc.n_points), size)
        assert metsch_check(inc, pts).ok


def test_extender_index_bounds(planes):
    # a line minus a point is 1-punctured; the index inequalities must hold
    inc, _ = planes("projective", 4)
    X = inc.points_of_line[0][1:]
    assert k_extendable(inc, X, 0) is None
    K = k_extendable(inc, X, 1)
    assert extender_index_bounds_hold(inc, X, K)


def test_extender_index_bounds_random_punctured(planes):
    inc, _ = planes("projective", 4)
    rng = random.Random(31)
    checked = 0
    for _ in range(10):
        B = tuple(sorted(rng.sample(range(inc.n_points), 12)))
        k = next(k for k in range(9) if k_extendable(inc, B, k) is not None)
        if k == 0:
            continue
        assert k_extendable(inc, B, k - 1) is None  # k-punctured
        K = k_extendable(inc, B, k)
        assert extender_index_bounds_hold(inc, B, K)
        checked += 1
    assert checked > 0
