import random
from fractions import Fraction

import pytest

from rackcover.cyclotomic import (
    CycScalar,
    cyclotomic_polynomial,
    euler_phi,
    parse_scalar,
    root_of_unity,
)


def test_cyclotomic_polynomials_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_euler_phi():
    assert [euler_phi(n) for n in range(1, 13)] == [
        1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4,
    ]


def test_root_powers_to_one():
    for n in (1, 2, 3, 4, 5, 6, 8, 12):
        z = root_of_unity(n)
        assert z ** n == 1
        if n > 1:
            assert z ** (n - 1) != 1 or n == 2 and z == -1


def test_i_squared():
    i = root_of_unity(4)
    assert i * i == -1


def test_zeta3_sum_vanishes():
    z = root_of_unity(3)
    assert 1 + z + z * z == 0


def test_inverse_of_one_plus_zeta5():
    a = 1 + root_of_unity(5)
    inv = a.inverse()
    assert a * inv == 1
    assert inv * a == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        CycScalar.zero(3).inverse()


def test_cross_order_arithmetic():
    # zeta_6^3 = -1 = zeta_2, computed across orders
    assert root_of_unity(6) ** 3 == root_of_unity(2)
    assert root_of_unity(6, 2) == root_of_unity(3)
    assert root_of_unity(4) * root_of_unity(3) == root_of_unity(12, 7)


def test_rational_embedding():
    a = CycScalar.rational(Fraction(3, 4), order=6)
    assert a.as_rational() == Fraction(3, 4)
    assert a + Fraction(1, 4) == 1


def test_field_axioms_randomized():
    rng = random.Random(7)
    for n in (1, 2, 3, 4, 6, 12):
        deg = euler_phi(n)
        def rand_scalar():
            return CycScalar(
                n, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(deg)]
            )
        for _ in range(20):
            a, b, c = rand_scalar(), rand_scalar(), rand_scalar()
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            if not a.is_zero:
                assert a * a.inverse() == 1
                assert (a ** 3) * (a ** -3) == 1


def test_power_matches_repeated_product():
    z = root_of_unity(12, 5)
    acc = CycScalar.one()
    for k in range(13):
        assert z ** k == acc
        acc = acc * z


def test_parse_scalar():
    assert parse_scalar("4 1") == root_of_unity(4)
    assert parse_scalar("-1") == -CycScalar.one()
    assert parse_scalar("2/3") == Fraction(2, 3)
    with pytest.raises(ValueError):
        parse_scalar("a b c")


def test_root_string_round_trip():
    for n in (2, 3, 4, 6):
        for k in range(n):
            s = root_of_unity(n, k).as_root_string()
            assert s == f"{n} {k}"
    assert (1 + root_of_unity(5)).as_root_string() is None


def test_str_forms():
    assert str(CycScalar.rational(-1)) == "-1"
    assert "z4" in str(root_of_unity(4))
