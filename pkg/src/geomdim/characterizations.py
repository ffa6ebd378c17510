"""Condition-based resolving-set verifiers for projective, affine and
biaffine planes.

Each verifier evaluates a four-condition system using only incidence counts
(secant, tangent, skew and cover tallies) — never graph distances — and is
equivalent to the generic signature check: all conditions hold iff the set is
resolving.  That equivalence is enforced by the test suite against
``metric.is_resolving``; these evaluators run in time linear in the
structure rather than O(|S| * vertices).

Terminology: *inner* objects are in the landmark set, *outer* ones are not.
A line is *skew*/*tangent* to the point part if it contains 0 / exactly 1
landmark point; a point is *covered* if some landmark line passes through it,
and *1-covered* if exactly one does.  A *direction* is covered when some
landmark line has it; a non-adjacency *class* is blocked when it contains a
landmark point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import PlaneContext
from .metric import VertexSet, cover_counts, secant_counts


@dataclass(frozen=True)
class ConditionCheck:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class ConditionReport:
    """Per-condition verdicts; all_ok is equivalent to "S is resolving"."""

    kind: str
    conditions: dict[str, ConditionCheck]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.conditions.values())

    def __bool__(self) -> bool:
        return self.all_ok

    def first_failure(self) -> tuple[str, ConditionCheck] | None:
        for name, check in self.conditions.items():
            if not check.ok:
                return name, check
        return None


def _at_most_one(items) -> ConditionCheck:
    """Pass iff the iterable yields at most one element; witness = first two."""
    found = []
    for x in items:
        found.append(x)
        if len(found) == 2:
            return ConditionCheck(False, tuple(found))
    return ConditionCheck(True)


def _grouped_at_most_one(pairs) -> ConditionCheck:
    """pairs = (group, item); pass iff every group yields at most one item."""
    seen: dict = {}
    for group, item in pairs:
        if group in seen:
            return ConditionCheck(False, (group, seen[group], item))
        seen[group] = item
    return ConditionCheck(True)


def verify_projective(ctx: PlaneContext, S: VertexSet) -> ConditionReport:
    """Resolving-set conditions for a projective plane.

    P1:  at most one outer line skew to the point part.
    P2:  through each inner point, at most one outer tangent line.
    P1': at most one outer point uncovered by the line part.
    P2': on each inner line, at most one outer 1-covered point.
    """
    if ctx.kind != "projective":
        raise ValueError(f"expected a projective context, got {ctx.kind!r}")
    inc = ctx.inc
    sec = secant_counts(inc, S)
    cov = cover_counts(inc, S)
    inner_pts, inner_lns = set(S.point_part), set(S.line_part)

    p1 = _at_most_one(j for j in range(inc.n_lines) if sec[j] == 0 and j not in inner_lns)
    p2 = _grouped_at_most_one(
        (p, j)
        for p in S.point_part
        for j in inc.lines_of_point[p]
        if sec[j] == 1 and j not in inner_lns
    )
    p1x = _at_most_one(p for p in range(inc.n_points) if cov[p] == 0 and p not in inner_pts)
    p2x = _grouped_at_most_one(
        (j, p)
        for j in S.line_part
        for p in inc.points_of_line[j]
        if cov[p] == 1 and p not in inner_pts
    )
    return ConditionReport("projective", {"P1": p1, "P2": p2, "P1'": p1x, "P2'": p2x})


def verify_affine(ctx: PlaneContext, S: VertexSet) -> ConditionReport:
    """Resolving-set conditions for an affine plane.

    A1:  at most one uncovered outer point.
    A2:  on each inner line, at most one 1-covered outer point.
    A1': per covered direction, at most one outer skew line with it; and at
         most one outer skew line with an uncovered direction overall.
    A2': through each inner point, at most one tangent line whose direction
         is uncovered.
    """
    if ctx.kind != "affine":
        raise ValueError(f"expected an affine context, got {ctx.kind!r}")
    return ConditionReport("affine", _affine_like_conditions(ctx, S, prefix="A"))


def verify_biaffine(ctx: PlaneContext, S: VertexSet) -> ConditionReport:
    """Resolving-set conditions for a biaffine plane.

    B1:  per blocked class, at most one uncovered outer point in it; and at
         most one uncovered outer point in the union of unblocked classes.
    B2:  on each inner line, at most one 1-covered point in an unblocked class.
    B1': per covered direction, at most one outer skew line with it; and at
         most one outer skew line with an uncovered direction overall.
    B2': through each inner point, at most one tangent line whose direction
         is uncovered.
    """
    if ctx.kind != "biaffine":
        raise ValueError(f"expected a biaffine context, got {ctx.kind!r}")
    inc = ctx.inc
    sec = secant_counts(inc, S)
    cov = cover_counts(inc, S)
    inner_pts = set(S.point_part)
    blocked = {ctx.class_of_point[p] for p in S.point_part}

    def uncovered_outer(p):
        return cov[p] == 0 and p not in inner_pts

    b1_blocked = _grouped_at_most_one(
        (ctx.class_of_point[p], p)
        for p in range(inc.n_points)
        if uncovered_outer(p) and ctx.class_of_point[p] in blocked
    )
    b1_unblocked = _at_most_one(
        p
        for p in range(inc.n_points)
        if uncovered_outer(p) and ctx.class_of_point[p] not in blocked
    )
    b1 = b1_blocked if not b1_blocked.ok else b1_unblocked

    b2 = _grouped_at_most_one(
        (j, p)
        for j in S.line_part
        for p in inc.points_of_line[j]
        if cov[p] == 1 and ctx.class_of_point[p] not in blocked
    )
    rest = _affine_like_conditions(ctx, S, prefix="B", sec=sec)
    return ConditionReport(
        "biaffine", {"B1": b1, "B2": b2, "B1'": rest["B1'"], "B2'": rest["B2'"]}
    )


def _affine_like_conditions(ctx, S, prefix, sec=None):
    """The point-side (A1, A2) and line-side (A1', A2') affine conditions.

    The line-side pair is shared verbatim by the biaffine system, where it
    appears as B1' and B2'.
    """
    inc = ctx.inc
    if sec is None:
        sec = secant_counts(inc, S)
    cov = cover_counts(inc, S)
    inner_pts, inner_lns = set(S.point_part), set(S.line_part)
    covered_dirs = {ctx.direction_of_line[j] for j in S.line_part}

    out: dict[str, ConditionCheck] = {}
    if prefix == "A":
        out["A1"] = _at_most_one(
            p for p in range(inc.n_points) if cov[p] == 0 and p not in inner_pts
        )
        out["A2"] = _grouped_at_most_one(
            (j, p)
            for j in S.line_part
            for p in inc.points_of_line[j]
            if cov[p] == 1 and p not in inner_pts
        )

    skew_outer = [j for j in range(inc.n_lines) if sec[j] == 0 and j not in inner_lns]
    a1_covered = _grouped_at_most_one(
        (ctx.direction_of_line[j], j) for j in skew_outer if ctx.direction_of_line[j] in covered_dirs
    )
    a1_uncovered = _at_most_one(
        j for j in skew_outer if ctx.direction_of_line[j] not in covered_dirs
    )
    out[prefix + "1'"] = a1_covered if not a1_covered.ok else a1_uncovered
    out[prefix + "2'"] = _grouped_at_most_one(
        (p, j)
        for p in S.point_part
        for j in inc.lines_of_point[p]
        if sec[j] == 1 and ctx.direction_of_line[j] not in covered_dirs
    )
    return out


def verify_conditions(ctx: PlaneContext, S: VertexSet) -> ConditionReport:
    """Dispatch to the verifier matching the context kind."""
    if ctx.kind == "projective":
        return verify_projective(ctx, S)
    if ctx.kind == "affine":
        return verify_affine(ctx, S)
    if ctx.kind == "biaffine":
        return verify_biaffine(ctx, S)
    raise ValueError(f"no condition system for kind {ctx.kind!r}")
