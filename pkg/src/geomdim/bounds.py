"""Known metric-dimension bounds per geometry family, as a queryable table.

Non-integer bounds are kept exact: 8q/3 - 7 and 3q - 9*sqrt(q) are rounded
with integer arithmetic only (isqrt), never through floats, since these
numbers feed combinatorial certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .gf import prime_power

FAMILIES = (
    "projective",
    "affine",
    "biaffine-general",
    "biaffine-desarguesian",
    "grid",
    "gq-general",
    "wq",
)

# exact small-order values for the Desarguesian biaffine plane, from published
# small-graph metric-dimension computations
SMALL_BIAFFINE_EXACT = {3: 4, 4: 6, 5: 9}


@dataclass(frozen=True)
class BoundEntry:
    """One row of the bounds table; None means "no bound known here"."""

    family: str
    n: int  # order q, or grid parameter s
    lower: int | None
    upper: int | None
    exact: int | None
    conditions: tuple[str, ...]
    provenance: tuple[str, ...]

    def window(self) -> tuple[int | None, int | None]:
        lo, hi = self.lower, self.upper
        if self.exact is not None:
            lo = self.exact if lo is None else max(lo, self.exact)
            hi = self.exact if hi is None else min(hi, self.exact)
        return lo, hi


def ceil_8q3_minus_7(q: int) -> int:
    """ceil(8q/3 - 7) without floats."""
    return -((-(8 * q - 21)) // 3)


def sqrt_stability_lower(q: int) -> int:
    """Smallest integer strictly greater than 3q - 9*sqrt(q)."""
    s81 = isqrt(81 * q)
    if s81 * s81 == 81 * q:
        return 3 * q - s81 + 1
    # 9*sqrt(q) irrational: floor(3q - 9*sqrt(q)) = 3q - s81 - 1
    return 3 * q - s81


def sqrt_stability_applies(q: int) -> bool:
    """The strengthened lower bound needs q = p prime >= 17, or
    q = p^h, h >= 2, with p >= 400."""
    ph = prime_power(q)
    if ph is None:
        return False
    p, h = ph
    return (h == 1 and p >= 17) or (h >= 2 and p >= 400)


def grid_formula(s: int) -> int:
    """Exact metric dimension of the grid quadrangle GQ(s,1)."""
    r, t = divmod(s, 3)
    return 4 * r + t + 1


def gq_lower(q: int) -> int:
    return max(6 * q - 27, 4 * q - 7)


def bounds_for(family: str, n: int) -> BoundEntry:
    """The bounds-table row for one family and parameter.

    Parameters outside a result's validity window simply drop that result
    from the row; rows can therefore be empty of bounds.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n < 1:
        raise ValueError(f"parameter must be positive, got {n}")
    lower = upper = exact = None
    conds: list[str] = []
    prov: list[str] = []

    if family == "projective":
        if n >= 13:
            exact = 4 * n - 4
            conds.append("exact requires q >= 13")
            prov.append("projective-plane exact value")
    elif family == "affine":
        if n >= 13:
            exact = 3 * n - 4
            conds.append("exact requires q >= 13")
            prov.append("affine-plane exact value")
    elif family in ("biaffine-general", "biaffine-desarguesian"):
        lower = 2 * n - 2
        prov.append("biaffine counting lower bound")
        if family == "biaffine-desarguesian":
            stab = ceil_8q3_minus_7(n)
            if stab > lower:
                lower = stab
                prov.append("Desarguesian 8q/3-7 lower bound")
            if sqrt_stability_applies(n):
                sq = sqrt_stability_lower(n)
                conds.append("sqrt-stability bound applies (prime q >= 17 or p >= 400)")
                if sq > lower:
                    lower = sq
                    prov.append("Desarguesian 3q-9*sqrt(q) lower bound")
            if n in SMALL_BIAFFINE_EXACT:
                exact = SMALL_BIAFFINE_EXACT[n]
                prov.append("small-order computed exact value")
        if n >= 4:
            upper = 3 * n - 6
            conds.append("upper requires q >= 4")
            prov.append("biaffine 3q-6 construction")
    elif family == "grid":
        exact = grid_formula(n)
        lower = upper = exact
        prov.append("grid exact formula")
    elif family == "gq-general":
        if n >= 2:
            lower = gq_lower(n)
            prov.append("GQ(q,q) counting lower bound")
    elif family == "wq":
        if n >= 2:
            lower = gq_lower(n)
            prov.append("GQ(q,q) counting lower bound")
            if n % 2 and n >= 3:
                upper = 8 * n - 1
                conds.append("odd q: aligned semi-resolving union")
                prov.append("symplectic 8q-1 construction")
            else:
                upper = 8 * n
                conds.append("even q: self-dual semi-resolving union")
                prov.append("symplectic 8q construction")
    entry = BoundEntry(
        family=family,
        n=n,
        lower=lower,
        upper=upper,
        exact=exact,
        conditions=tuple(conds),
        provenance=tuple(prov),
    )
    lo, hi = entry.window()
    if lo is not None and hi is not None and lo > hi:
        raise AssertionError(f"inconsistent table row: {entry}")
    return entry


@dataclass(frozen=True)
class CrosscheckVerdict:
    ok: bool
    entry: BoundEntry
    value: int
    kind: str
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def crosscheck(family: str, n: int, value: int, kind: str = "mu") -> CrosscheckVerdict:
    """Assert a computed value against the table; violations are critical.

    kind="mu": an exact metric dimension must land inside [lower, upper] and
    match an exact entry.  kind="upper_witness": the size of a verified
    resolving set may exceed the best upper bound but can never beat the
    lower bound or an exact value.
    """
    if kind not in ("mu", "upper_witness"):
        raise ValueError(f"kind must be 'mu' or 'upper_witness', got {kind!r}")
    entry = bounds_for(family, n)
    lo, hi = entry.window()
    if lo is not None and value < lo:
        return CrosscheckVerdict(False, entry, value, kind, f"value {value} below lower bound {lo}")
    if kind == "mu":
        if hi is not None and value > hi:
            return CrosscheckVerdict(False, entry, value, kind, f"value {value} above upper bound {hi}")
        if entry.exact is not None and value != entry.exact:
            return CrosscheckVerdict(False, entry, value, kind, f"value {value} != exact {entry.exact}")
    return CrosscheckVerdict(True, entry, value, kind)
