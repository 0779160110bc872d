from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cyclecalc.linalg import (FiniteDimAlgebra, Matrix, crt_idempotents,
                              generalized_binomial, hook_length_count,
                              kernel_basis, lift_idempotent, AlgebraMap,
                              partitions, pfaffian, poly_divmod, poly_ext_gcd,
                              poly_mul, rank, rref, schur_weyl_dim, solve)


def test_matrix_basic_ops():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert a + b == Matrix([[1, 3], [4, 4]])
    assert a * b == Matrix([[2, 1], [4, 3]])
    assert a.transpose() == Matrix([[1, 3], [2, 4]])
    assert a.trace() == 5
    assert a.det() == -2
    assert (a ** 0) == Matrix.identity(2)
    assert a ** 2 == a * a


def test_matrix_rejects_floats():
    with pytest.raises(TypeError):
        Matrix([[0.5]])


def test_rref_rank_kernel_solve():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert all(sum(m.data[i][j] * ker[0][j] for j in range(3)) == 0
               for i in range(3))
    rhs = [F(6), F(12), F(2)]
    sol = solve(m, rhs)
    assert sol is not None
    assert [sum(m.data[i][j] * sol[j] for j in range(3)) for i in range(3)] == rhs
    assert solve(Matrix([[1, 0], [1, 0]]), [F(1), F(2)]) is None


def test_poly_division_and_gcd():
    p = [F(-1), F(0), F(1)]          # x^2 - 1
    q = [F(-1), F(1)]                # x - 1
    quo, rem = poly_divmod(p, q)
    assert rem == []
    assert poly_mul(quo, q) == p
    g, u, v = poly_ext_gcd([F(-1), F(1)], [F(1), F(1)])
    assert g == [F(1)]               # coprime


def test_crt_idempotents_split_diagonalizable():
    t = Matrix([[2, 0, 0], [0, 2, 0], [0, 0, 5]])
    e2, e5 = crt_idempotents(t, [[F(-2), F(1)], [F(-5), F(1)]])
    assert e2 + e5 == Matrix.identity(3)
    assert e2 * e5 == Matrix.zeros(3, 3)
    assert e2 * e2 == e2
    assert t * e2 == e2.scale(2)


def test_lift_idempotent_through_nilpotent_quotient():
    # algebra Q[x]/(x^2) with basis (1, x); quotient by (x) is Q
    table = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    source = FiniteDimAlgebra(table, [1, 0])
    target = FiniteDimAlgebra([[[1]]], [1])
    q = AlgebraMap(source, target, Matrix([[1, 0]]))
    e = lift_idempotent([F(1)], q)
    assert source.mul(e, e) == e
    assert q(e) == [F(1)]


def test_pfaffian_small_cases():
    assert pfaffian(Matrix([[0, 3], [-3, 0]])) == 3
    m = Matrix([[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]])
    assert pfaffian(m) == 1 * 6 - 2 * 5 + 3 * 4
    with pytest.raises(ValueError):
        pfaffian(Matrix([[0, 1], [1, 0]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda k: st.lists(st.integers(-5, 5),
                       min_size=k * (2 * k - 1), max_size=k * (2 * k - 1))))
def test_pfaffian_squares_to_determinant(uppers):
    import math
    n = int((1 + math.isqrt(1 + 8 * len(uppers))) // 2)
    m = [[0] * n for _ in range(n)]
    it = iter(uppers)
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = next(it)
            m[j][i] = -m[i][j]
    mat = Matrix(m)
    assert pfaffian(mat) ** 2 == mat.det()


def test_generalized_binomial():
    assert generalized_binomial(F(-2), 3) == F(-4)
    assert generalized_binomial(F(4), 2) == F(6)
    assert generalized_binomial(F(1, 2), 2) == F(-1, 8)


def test_partitions_and_hooks():
    assert set(partitions(4, 2)) == {(4,), (3, 1), (2, 2)}
    assert hook_length_count((2, 1)) == 2
    assert hook_length_count((3, 2)) == 5


def test_schur_weyl_dim_table():
    assert schur_weyl_dim(2, 3) == 5
    assert schur_weyl_dim(3, 3) == 6
    assert schur_weyl_dim(1, 4) == 1
    # stabilizes at n >= r
    assert schur_weyl_dim(5, 5) == 120
