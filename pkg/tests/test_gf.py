"""Field axioms, deterministic modulus choice, and the known tiny examples."""

import random

import pytest

from geomdim.gf import FiniteField, field_for_order, is_prime, prime_power

FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 121, 128, 169, 243, 256]


def test_characteristic_two():
    f = FiniteField(2, 1)
    assert f.add(1, 1) == 0


def test_gf5_inverse():
    assert FiniteField(5, 1).inv(2) == 3  # 2*3 = 6 = 1 mod 5


def test_gf4_modulus_and_square():
    f = FiniteField(2, 2)
    assert f.modulus == (1, 1, 1)  # x^2 + x + 1
    assert f.mul(2, 2) == 3  # x * x = x + 1, forced by the modulus
    assert f.inv(2) == 3  # x(x+1) = x^2 + x = 1


def test_gf3_addition():
    assert FiniteField(3, 1).add(2, 2) == 1


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        FiniteField(6, 1)
    with pytest.raises(ValueError):
        FiniteField(2, 0)
    with pytest.raises(ValueError):
        FiniteField(2, 20)  # above the default maximum order
    with pytest.raises(ValueError):
        field_for_order(12)


def test_inv_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        FiniteField(7, 1).inv(0)


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_multiplicative_inverses(q):
    f = field_for_order(q)
    for a in range(1, q):
        assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("q", [q for q in FIELD_ORDERS if q <= 256])
def test_frobenius_additive(q):
    # (a+b)^p = a^p + b^p, exhaustively
    f = field_for_order(q)
    p = f.p
    pow_p = [f.pow(a, p) for a in range(q)]
    for a in range(q):
        row = f.add_table[a]
        for b in range(a, q):
            assert pow_p[row[b]] == f.add(pow_p[a], pow_p[b])


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27])
def test_field_axioms_sampled(q):
    f = field_for_order(q)
    rng = random.Random(1000 + q)
    triples = [(rng.randrange(q), rng.randrange(q), rng.randrange(q)) for _ in range(200)]
    for a, b, c in triples:
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert all(f.mul(a, 0) == 0 for a in range(q))
    assert all(f.mul(a, 1) == a for a in range(q))


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_deterministic_tables(q):
    f1, f2 = field_for_order(q), field_for_order(q)
    assert f1.modulus == f2.modulus
    assert (f1.add_table == f2.add_table).all()
    assert (f1.mul_table == f2.mul_table).all()


def test_op_dispatch():
    f = FiniteField(3, 2)
    assert f.op("add", 4, 7) == f.add(4, 7)
    assert f.op("mul", 4, 7) == f.mul(4, 7)
    assert f.op("neg", 4) == f.neg(4)
    assert f.op("inv", 4) == f.inv(4)
    with pytest.raises(ValueError):
        f.op("div", 1, 2)


def test_prime_power_decomposition():
    assert prime_power(8) == (2, 3)
    assert prime_power(169) == (13, 2)
    assert prime_power(1) is None
    assert prime_power(6) is None
    assert prime_power(97) == (97, 1)
    assert is_prime(2) and not is_prime(1) and not is_prime(9)
