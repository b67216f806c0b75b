import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobalg.linalg import bareiss_det, laplace_det, solve_field
from frobalg.qtorus.oracle import _cheb_split_by_division
from frobalg.scalars import (
    ChebPoly,
    CommutativeFraction,
    CyclotomicField,
    LaurentPoly,
    chebyshev_collect,
    chebyshev_expand,
    chebyshev_t,
    chebyshev_trace_filter,
    cyclotomic_polynomial,
    poly_compose,
    poly_mul,
    residue_split,
)
from frobalg.scalars.chebyshev import cheb_index_product, poly_trim

ORDERS = (3, 5, 7, 9)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)
    assert len(cyclotomic_polynomial(15)) - 1 == 8


@pytest.mark.parametrize("N", ORDERS)
def test_zeta_has_exact_order(N):
    F = CyclotomicField(N)
    z = F.zeta_power(1)
    assert z**N == F.one
    assert all(z**k != F.one for k in range(1, N))
    assert F.q == z * z


@pytest.mark.parametrize("N", ORDERS)
def test_high_power_reduction(N):
    # products of top-degree elements exceed N - 1 before reduction
    F = CyclotomicField(N)
    top = F.zeta_power(F.degree - 1)
    assert top * top == F.zeta_power(2 * F.degree - 2)


def test_relation_at_three():
    F = CyclotomicField(3)
    z = F.zeta_power(1)
    assert z * z == -1 - z
    assert 1 + z + z * z == 0


coeff = st.integers(-5, 5)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDERS), st.lists(coeff, min_size=8, max_size=8), st.lists(coeff, min_size=8, max_size=8))
def test_field_axioms(N, u, v):
    F = CyclotomicField(N)
    x = F.from_power_coefficients(u[: F.degree])
    y = F.from_power_coefficients(v[: F.degree])
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


def test_rationals_hash_like_fractions():
    F = CyclotomicField(5)
    assert hash(F(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert F(3) == 3
    assert F.from_json("2/3") == Fraction(2, 3)
    z = F.zeta_power(2)
    assert F.from_json(z.to_json()) == z


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        CyclotomicField(3).zero.inverse()


def test_chebyshev_small():
    assert chebyshev_t(0) == (2,)
    assert chebyshev_t(1) == (0, 1)
    assert chebyshev_t(2) == (-2, 0, 1)
    assert chebyshev_t(3) == (0, -3, 0, 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 20), st.integers(0, 20))
def test_chebyshev_product_rule(a, b):
    lhs = poly_mul(list(chebyshev_t(a)), list(chebyshev_t(b)))
    rhs = [0] * (max(a, b) + a + b + 1)
    for i, c in enumerate(chebyshev_t(a + b)):
        rhs[i] += c
    for i, c in enumerate(chebyshev_t(abs(a - b))):
        rhs[i] += c
    assert poly_trim(lhs) == poly_trim(rhs)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 5), (4, 2)])
def test_chebyshev_composition(m, n):
    assert poly_trim(poly_compose(list(chebyshev_t(m)), list(chebyshev_t(n)))) == poly_trim(list(chebyshev_t(m * n)))


def test_expand_and_collect_roundtrip():
    assert chebyshev_expand([0, 0, 1]) == {2: 1, 0: 1}
    for m in range(12):
        assert chebyshev_expand(list(chebyshev_t(m))) == {m: 1}
    f = [Fraction(3), Fraction(-1), Fraction(0), Fraction(5, 2)]
    assert poly_trim(chebyshev_collect(chebyshev_expand(f))) == poly_trim(f)


def test_trace_filter_examples():
    assert poly_trim(chebyshev_trace_filter([0, 0, 0, 1], 3)) == poly_trim(list(chebyshev_t(3)))
    assert poly_trim(chebyshev_trace_filter(list(chebyshev_t(4)), 3)) == [0]
    # 1 = T_0 / 2 survives
    assert poly_trim(chebyshev_trace_filter([1], 3)) == [1]


@pytest.mark.parametrize("N", (3, 5))
def test_residue_split_matches_division(N):
    for m in range(5 * N):
        ours = {r: dict(terms) for r, terms in residue_split(m, N)}
        theirs = _cheb_split_by_division(m, N)
        assert ours == {r: {j: Fraction(c) for j, c in t.items()} for r, t in theirs.items()}


def test_cheb_index_product():
    assert dict(cheb_index_product((2,), (3,))) == {(5,): 1, (1,): 1}
    assert dict(cheb_index_product((1,), (1,))) == {(2,): 1, (0,): 1}


def test_chebpoly_power_basis_roundtrip():
    F = CyclotomicField(3)
    x = ChebPoly.variable(F, 2, 0)
    y = ChebPoly.variable(F, 2, 1)
    f = x * x * y + ChebPoly.constant(F, 2, 3)
    assert ChebPoly.from_power_basis(F, 2, f.to_power_basis()) == f
    assert f.to_power_basis() == {(2, 1): F.one, (0, 0): F(3)}


def test_laurent_and_fractions():
    F = CyclotomicField(3)
    y = LaurentPoly.monomial(F, (1,))
    one = LaurentPoly.constant(F, 1, 1)
    f = CommutativeFraction(one, y + one)
    g = CommutativeFraction(y, y + one)
    assert f + g == CommutativeFraction(one)
    assert (f * f.inverse()) == CommutativeFraction(one)
    assert LaurentPoly.monomial(F, (-2,)) * LaurentPoly.monomial(F, (2,)) == one


def _rand_matrix(F, n, seed):
    rng = random.Random(seed)
    return [[F.from_power_coefficients([rng.randint(-2, 2) for _ in range(F.degree)]) for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("seed", range(4))
def test_determinants_agree(seed):
    F = CyclotomicField(5)
    M = _rand_matrix(F, 5, seed)
    assert bareiss_det(M, F.zero, F.one) == laplace_det(M, F.zero, F.one)


def test_singular_determinant_and_solve():
    F = CyclotomicField(3)
    M = [[F(1), F(2)], [F(2), F(4)]]
    assert not bareiss_det(M, F.zero, F.one)
    with pytest.raises(ZeroDivisionError):
        solve_field(M, [F(1), F(0)], F.zero, F.one)
    A = [[F(2), F(1)], [F(1), F(1)]]
    v = solve_field(A, [F(1), F(0)], F.zero, F.one)
    assert [A[i][0] * v[0] + A[i][1] * v[1] for i in range(2)] == [1, 0]
