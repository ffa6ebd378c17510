"""Exact arithmetic in the Galois field GF(p^h) via precomputed lookup tables.

Elements are integers 0..q-1 encoding polynomials over GF(p): the element
``e`` has coefficients ``(e // p**i) % p`` for x^i (low degree first), so 0 is
the additive zero and 1 the multiplicative one.  Arithmetic is reduced modulo
a deterministically chosen irreducible polynomial, which makes every field,
and hence every geometry built on top of one, reproducible across runs.
"""

from __future__ import annotations

import numpy as np

# Largest field order constructed by default.  Tables are dense q x q arrays,
# so this is a memory guard, not a mathematical limit.
DEFAULT_MAX_ORDER = 1 << 14


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, h) with n == p**h and p prime, or None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            break
        if n % p:
            continue
        h, m = 0, n
        while m % p == 0:
            m //= p
            h += 1
        return (p, h) if m == 1 else None
    return (n, 1)  # n has no divisor <= sqrt(n), hence prime


def _poly_mul_mod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    """Multiply coefficient lists a*b mod (modulus, p); low degree first."""
    h = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: modulus is monic of degree h
    for d in range(len(prod) - 1, h - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(h):
                prod[d - h + i] = (prod[d - h + i] - c * modulus[i]) % p
    out = prod[:h]
    return out + [0] * (h - len(out))


def _poly_divisible(poly: list[int], div: list[int], p: int) -> bool:
    """True if monic ``div`` divides ``poly`` over GF(p)."""
    rem = list(poly)
    dd = len(div) - 1
    while len(rem) - 1 >= dd:
        c = rem[-1]
        if c:
            shift = len(rem) - 1 - dd
            for i in range(dd + 1):
                rem[shift + i] = (rem[shift + i] - c * div[i]) % p
        rem.pop()
    return all(c == 0 for c in rem)


def _monic_polys(degree: int, p: int):
    """Yield monic coefficient lists of the given degree, low degree first."""
    for v in range(p**degree):
        coeffs = [(v // p**i) % p for i in range(degree)]
        yield coeffs + [1]


def _smallest_irreducible(p: int, h: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree h over GF(p).

    Candidates are ordered by reading the non-leading coefficients, low degree
    first, as base-p digits.  Irreducibility is decided by trial division by
    every monic polynomial of degree 1..h//2.
    """
    if h == 1:
        return [0, 1]  # the polynomial x
    divisors = [d for deg in range(1, h // 2 + 1) for d in _monic_polys(deg, p)]
    for cand in _monic_polys(h, p):
        if cand[0] == 0:
            continue  # divisible by x
        if not any(_poly_divisible(cand, d, p) for d in divisors):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {h} over GF({p})")


class FiniteField:
    """GF(p^h) with dense addition/multiplication tables.

    Immutable after construction (tables are flagged read-only), hence safe
    for unrestricted concurrent reads.
    """

    def __init__(self, p: int, h: int, max_order: int = DEFAULT_MAX_ORDER):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if h < 1:
            raise ValueError(f"extension degree must be >= 1, got {h}")
        q = p**h
        if q > max_order:
            raise ValueError(f"field order {q} exceeds maximum {max_order}")
        self.p = p
        self.h = h
        self.q = q
        self.modulus = tuple(_smallest_irreducible(p, h))

        # digits[e, i] = coefficient of x^i in element e
        powers = p ** np.arange(h, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // powers) % p

        add = np.empty((q, q), dtype=np.int32)
        for a in range(q):
            add[a] = ((digits[a] + digits) % p) @ powers
        self.add_table = add

        mul = np.empty((q, q), dtype=np.int32)
        mod = list(self.modulus)
        for a in range(q):
            # rows of M: digits of a * x^i mod modulus; multiplication by any
            # b is then the GF(p)-linear combination of those rows.
            shifted = [(a // p**i) % p for i in range(h)]
            m_rows = np.empty((h, h), dtype=np.int64)
            for i in range(h):
                m_rows[i] = shifted
                if i < h - 1:
                    shifted = _poly_mul_mod(shifted, [0, 1], mod, p)
            mul[a] = ((digits @ m_rows) % p) @ powers
        self.mul_table = mul

        neg = np.empty(q, dtype=np.int32)
        rows, cols = np.nonzero(add == 0)
        neg[rows] = cols
        self.neg_table = neg

        inv = np.zeros(q, dtype=np.int32)
        rows, cols = np.nonzero(mul == 1)
        inv[rows] = cols
        self.inv_table = inv

        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            t.flags.writeable = False

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def op(self, name: str, a: int, b: int | None = None) -> int:
        """Dispatch by operation name: add/mul take (a, b); neg/inv take a."""
        if name == "add":
            return self.add(a, b)
        if name == "mul":
            return self.mul(a, b)
        if name == "neg":
            return self.neg(a)
        if name == "inv":
            return self.inv(a)
        raise ValueError(f"unknown field operation {name!r}")

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, h={self.h})"


def field_for_order(q: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteField:
    """Build GF(q) for a prime power q."""
    ph = prime_power(q)
    if ph is None:
        raise ValueError(f"{q} is not a prime power")
    return FiniteField(ph[0], ph[1], max_order=max_order)
