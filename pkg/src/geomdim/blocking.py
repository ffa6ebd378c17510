"""Blocking sets, point indices, k-extendability and the tangent-count and
quadratic index inequalities used to reason about almost-blocking sets.

Here a *blocking set* is a point set meeting every line; the *index* of a
point P with respect to a point set is the number of lines through P missing
the set entirely; a point of a blocking set is *essential* if removing it
leaves some line unblocked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .geometry import Incidence, PlaneContext


class CombinatorialBudgetError(RuntimeError):
    """Raised when a subset enumeration exceeds its allowed size."""


@dataclass(frozen=True)
class BlockingReport:
    """Skew-line census of a point set."""

    is_blocking: bool
    delta: int  # number of skew lines
    ind: tuple[int, ...]  # per point: skew lines through it
    essential: tuple[int, ...]  # points whose removal creates a skew line
    skew_lines: tuple[int, ...]


def analyze(inc: Incidence, points) -> BlockingReport:
    """Exact delta, per-point index and essential points of a point set."""
    pm = 0
    for p in points:
        pm |= 1 << int(p)
    skew = [j for j in range(inc.n_lines) if inc.point_mask_of_line[j] & pm == 0]
    skew_mask = 0
    for j in skew:
        skew_mask |= 1 << j
    ind = tuple((inc.line_mask_of_point[p] & skew_mask).bit_count() for p in range(inc.n_points))
    pset = {int(p) for p in points}
    essential = tuple(
        p
        for p in sorted(pset)
        if any(
            (inc.point_mask_of_line[j] & pm) == (1 << p)
            for j in inc.lines_of_point[p]
        )
    )
    return BlockingReport(
        is_blocking=not skew,
        delta=len(skew),
        ind=ind,
        essential=essential,
        skew_lines=tuple(skew),
    )


def k_extendable(
    inc: Incidence, points, k: int, max_subsets: int = 2_000_000
) -> tuple[int, ...] | None:
    """A k-point extender turning the set into a blocking set, or None.

    Candidate extender points are restricted to points lying on at least one
    skew line: a minimal extender never uses any other point, and a smaller
    extender found among candidates is padded with the smallest unused
    points.  Exhaustive over candidate subsets, smallest subsets first.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    pset = {int(p) for p in points}
    rep = analyze(inc, pset)
    n_free = inc.n_points - len(pset)
    skew_masks = [inc.point_mask_of_line[j] for j in rep.skew_lines]
    cand = [p for p in range(inc.n_points) if rep.ind[p] > 0 and p not in pset]

    def pad(core: tuple[int, ...]) -> tuple[int, ...] | None:
        need = k - len(core)
        extra = [p for p in range(inc.n_points) if p not in pset and p not in core][:need]
        if len(extra) < need:
            return None
        return tuple(sorted(core + tuple(extra)))

    tried = 0
    for j in range(0, k + 1):
        for comb in itertools.combinations(cand, j):
            tried += 1
            if tried > max_subsets:
                raise CombinatorialBudgetError(f"more than {max_subsets} candidate subsets")
            cm = 0
            for p in comb:
                cm |= 1 << p
            if all(m & cm for m in skew_masks):
                padded = pad(comb)
                if padded is not None:
                    return padded
        if j >= n_free:
            break
    return None


def extender_index_bounds_hold(inc: Incidence, points, extender) -> bool:
    """Index inequalities tying a minimal extender to the skew-line census.

    For a k-punctured set with k-extender K: every point outside K lies on at
    most k skew lines, and every point of K on at least 2q - |set| - k + 1,
    where q is the plane order.  Callers must have established puncturedness
    (no (k-1)-extender) before relying on the second inequality.
    """
    rep = analyze(inc, points)
    k = len(extender)
    kset = set(extender)
    q = len(inc.points_of_line[0]) - 1
    low = 2 * q - len(set(points)) - k + 1
    for p in range(inc.n_points):
        if p in kset:
            if rep.ind[p] < low:
                return False
        elif rep.ind[p] > k:
            return False
    return True


def min_blocking(ctx: PlaneContext, max_order: int = 4) -> tuple[int, tuple[int, ...]]:
    """Exact minimum blocking-set size of an affine plane, with witness.

    Exhausts all smaller sizes, so the returned size is certified.  Orders
    above ``max_order`` are rejected: the enumeration is combinatorial.
    """
    if ctx.kind != "affine":
        raise ValueError(f"expected an affine context, got {ctx.kind!r}")
    if ctx.q > max_order:
        raise ValueError(f"order {ctx.q} too large for exhaustive search (max {max_order})")
    inc = ctx.inc
    masks = inc.point_mask_of_line
    for k in range(1, inc.n_points + 1):
        for comb in itertools.combinations(range(inc.n_points), k):
            bm = 0
            for p in comb:
                bm |= 1 << p
            if all(m & bm for m in masks):
                return k, comb
    raise AssertionError("no blocking set found")  # unreachable: all points block


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    failures: tuple = ()


def tangent_bound_check(inc: Incidence, points) -> CheckReport:
    """Every essential point of a blocking set of a projective plane lies on
    at least 2q + 1 - |set| tangent lines.  Fails fast on non-blocking input."""
    pset = {int(p) for p in points}
    rep = analyze(inc, pset)
    if not rep.is_blocking:
        raise ValueError("input point set is not a blocking set")
    q = len(inc.points_of_line[0]) - 1
    bound = 2 * q + 1 - len(pset)
    pm = 0
    for p in pset:
        pm |= 1 << p
    failures = []
    for p in rep.essential:
        tangents = sum(
            1 for j in inc.lines_of_point[p] if (inc.point_mask_of_line[j] & pm) == (1 << p)
        )
        if tangents < bound:
            failures.append((p, tangents, bound))
    return CheckReport(ok=not failures, failures=tuple(failures))


def metsch_check(inc: Incidence, points) -> CheckReport:
    """Quadratic index inequality for any point set B of a projective plane:
    for every P outside B, ind(P)^2 - (2q+1-|B|)*ind(P) + delta >= 0."""
    pset = {int(p) for p in points}
    rep = analyze(inc, pset)
    q = len(inc.points_of_line[0]) - 1
    coeff = 2 * q + 1 - len(pset)
    failures = []
    for p in range(inc.n_points):
        if p in pset:
            continue
        i = rep.ind[p]
        val = i * i - coeff * i + rep.delta
        if val < 0:
            failures.append((p, i, val))
    return CheckReport(ok=not failures, failures=tuple(failures))


