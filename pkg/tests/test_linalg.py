"""Exact linear algebra over Fraction and over Q(k)."""
from fractions import Fraction

from vertexzhu.scalars import Scalar, S_ONE, S_K
from vertexzhu.linalg import rank, frac_rank, kernel_basis, solve_linear, in_span


def F(x):
    return Fraction(x)


def test_frac_rank_known_matrices():
    assert frac_rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert frac_rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert frac_rank([]) == 0
    assert frac_rank([[F(0), F(0)]]) == 0


def test_rank_over_rational_functions():
    rows = [[S_K, S_ONE], [S_K * S_K, S_K]]
    assert rank(rows) == 1
    rows = [[S_K, S_ONE], [S_ONE, S_K]]
    assert rank(rows) == 2


def test_kernel_basis_orthogonality():
    rows = [[S_ONE, S_K, Scalar.of(0)],
            [Scalar.of(0), S_ONE, S_K]]
    ker = kernel_basis(rows, 3, one=S_ONE)
    assert len(ker) == 1
    v = ker[0]
    for row in rows:
        acc = Scalar.of(0)
        for a, b in zip(row, v):
            acc = acc + a * b
        assert acc.is_zero()


def test_solve_linear_exact_and_unsolvable():
    rows = [[S_ONE, Scalar.of(2)], [Scalar.of(0), S_K]]
    target = [S_ONE, S_K]
    sol = solve_linear(rows, target, one=S_ONE)
    assert sol is not None
    acc = [Scalar.of(0), Scalar.of(0)]
    for c, row in zip(sol, rows):
        for i, a in enumerate(row):
            acc[i] = acc[i] + c * a
    assert acc[0] == target[0] and acc[1] == target[1]
    assert solve_linear([[S_ONE, Scalar.of(0)]],
                        [Scalar.of(0), S_ONE], one=S_ONE) is None


def test_in_span():
    rows = [[S_ONE, S_ONE], [S_ONE, -S_ONE]]
    assert in_span(rows, [Scalar.of(5), Scalar.of(3)])
    assert not in_span([[S_ONE, S_ONE]], [S_ONE, -S_ONE])
