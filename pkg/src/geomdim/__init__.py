"""Finite incidence geometries and exact metric-dimension tooling.

Builds projective, affine and biaffine planes over GF(q), grid and symplectic
generalized quadrangles; verifies resolving sets both generically (distance
signatures) and through counting characterizations; generates the known
explicit (semi-)resolving sets; and computes or certifies metric dimension
exactly at small orders.
"""

from .blocking import BlockingReport, analyze, k_extendable, metsch_check, min_blocking, tangent_bound_check
from .bounds import BoundEntry, bounds_for, crosscheck
from .characterizations import (
    ConditionReport,
    verify_affine,
    verify_biaffine,
    verify_conditions,
    verify_projective,
)
from .constructions import (
    ConstructionError,
    affine_basis,
    bc_resolving,
    biaffine_3q6,
    gq_line_srs_odd,
    grid_resolving,
    lift_affine,
    wq_point_srs,
    wq_resolving,
)
from .geometry import (
    Incidence,
    PlaneContext,
    SymplecticSpace,
    affine_from_projective,
    affine_plane,
    biaffine_from_affine,
    biaffine_plane,
    check_gq,
    dual,
    grid_gq,
    pg3,
    projective_plane,
    triad_centers,
    w_q,
)
from .gf import FiniteField, field_for_order, prime_power
from .metric import (
    Diagnostics,
    VertexSet,
    bfs_distances,
    diagnostics,
    distance_matrix,
    is_resolving,
    is_semi_resolving,
    resolving_set_inequalities,
)
from .search import BudgetExceededError, SearchResult, certify_lower, exact_mu, greedy_upper

__version__ = "0.1.0"
