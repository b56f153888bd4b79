"""Exact scalar arithmetic in Q(k) and combinatorial helpers."""
from fractions import Fraction

import pytest

from vertexzhu.scalars import (Scalar, S_ZERO, S_ONE, S_K, gen_binom, epsilon,
                               chi, phase_mod1, format_scalar, parse_scalar,
                               format_rational, parse_rational)


def test_field_axioms_on_samples():
    a = (S_K * S_K + Scalar.of(3)) / (S_K - Scalar.of(1))
    b = S_K / (S_K + Scalar.of(2))
    c = Scalar.of(Fraction(-7, 3))
    assert (a + b) * c == a * c + b * c
    assert (a - a).is_zero()
    assert (a / b) * b == a
    assert a * (b * c) == (a * b) * c


def test_division_and_normalization():
    x = (S_K * S_K - S_ONE) / (S_K - S_ONE)
    assert x == S_K + S_ONE
    with pytest.raises(ZeroDivisionError):
        S_ONE / S_ZERO


def test_specialize_and_pole():
    s = S_ONE / (S_K - Scalar.of(2))
    assert s.specialize(Fraction(3)) == 1
    with pytest.raises(ZeroDivisionError):
        s.specialize(Fraction(2))
    t = (S_K * S_K - Scalar.of(4)) / (S_K - Scalar.of(2))
    assert t.specialize(Fraction(2)) == 4


def test_gen_binom_pascal():
    for x in [Fraction(5, 2), Fraction(-3), Fraction(0), Fraction(7, 3)]:
        for j in range(1, 8):
            assert gen_binom(x, j) == gen_binom(x - 1, j) + gen_binom(x - 1, j - 1)


def test_gen_binom_vandermonde():
    x, y = Fraction(3, 2), Fraction(-5, 3)
    for n in range(6):
        lhs = gen_binom(x + y, n)
        rhs = sum(gen_binom(x, j) * gen_binom(y, n - j) for j in range(n + 1))
        assert lhs == rhs


def test_gen_binom_integers():
    from math import comb
    for n in range(8):
        for j in range(n + 1):
            assert gen_binom(Fraction(n), j) == comb(n, j)
    assert gen_binom(Fraction(2), 5) == 0


def test_epsilon_range_and_defining_property():
    for phase in [Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)]:
        for weight in [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(5, 3)]:
            e = epsilon(phase, weight)
            assert -1 < e <= 0
            assert phase_mod1(e + weight - phase) == 0


def test_chi_values():
    assert chi(Fraction(0), Fraction(0)) == 0
    assert chi(Fraction(-1, 2), Fraction(-1, 2)) == 1
    assert chi(Fraction(-1, 3), Fraction(-1, 2)) == 0
    assert chi(Fraction(-2, 3), Fraction(-1, 2)) == 1
    with pytest.raises(ValueError):
        chi(Fraction(-1), Fraction(0))


def test_format_parse_roundtrip():
    samples = [S_ZERO, S_ONE, S_K, Scalar.of(Fraction(-3, 7)),
               (S_K + S_ONE) / (S_K * S_K - Scalar.of(2)),
               S_K * S_K * S_K - Scalar.of(Fraction(1, 2))]
    for s in samples:
        assert parse_scalar(format_scalar(s)) == s
    for q in [Fraction(0), Fraction(-5, 3), Fraction(12)]:
        assert parse_rational(format_rational(q)) == q
