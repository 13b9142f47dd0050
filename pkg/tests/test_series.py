"""Kernel contract tests for the truncated power-series ring."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specrad.errors import (
    NonSquareConstant,
    NonzeroInnerConstant,
    NotInvertible,
    TruncationMismatch,
    ZeroConstantTerm,
)
from specrad.series import BiSeries, QQ, Series, bi_substitute, dominates
from specrad.transforms import cogrowth_transform, tree_green

from oracles import binomial_series, geometric_series, lagrange_inversion

N = 16

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def series_strategy(n=8, nonzero_const=False):
    elems = rationals.filter(lambda q: q != 0) if nonzero_const else rationals
    return st.builds(
        lambda c0, rest: Series([c0] + rest, n),
        elems, st.lists(rationals, min_size=n, max_size=n))


# --- add ---------------------------------------------------------------------

def test_add_linearity():
    a = Series([1, 1], 4)
    assert a + a == Series([2, 2], 4)


def test_add_identity():
    a = Series([3, QQ(1, 2), 7], 5)
    assert a + Series.zero(5) == a


def test_add_inverse_tree_series():
    h = tree_green(8, 12)
    assert h + (-h) == Series.zero(12)


# --- mul ---------------------------------------------------------------------

def test_mul_square_binomial():
    a = Series([1, 1], 4)
    assert a * a == Series([1, 2, 1], 4)


def test_mul_identity():
    a = Series([2, 3, QQ(5, 7)], 6)
    assert a * Series.one(6) == a


def test_mul_geometric_inverse():
    geo = geometric_series(1, N)
    assert Series([1, -1], N) * geo == Series.one(N)


# --- reciprocal --------------------------------------------------------------

def test_reciprocal_geometric():
    assert Series([1, -1], N).reciprocal() == geometric_series(1, N)


def test_reciprocal_one():
    assert Series.one(N).reciprocal() == Series.one(N)


def test_reciprocal_even_geometric():
    # 1/(1 + 7 t^2) is a geometric series in -7 t^2
    got = Series([1, 0, 7], 10).reciprocal()
    want = [(-7) ** k for k in range(6)]
    assert [got.coeffs[2 * k] for k in range(6)] == [QQ(w) for w in want]
    assert all(got.coeffs[2 * k + 1] == 0 for k in range(5))


def test_reciprocal_zero_constant_raises():
    with pytest.raises(ZeroConstantTerm):
        Series([0, 1], 4).reciprocal()


# --- compose -----------------------------------------------------------------

def test_compose_identity_substitution():
    a = Series([5, QQ(1, 3), 2, 9], 8)
    assert a.compose(Series.t(8)) == a


def test_compose_geometric_squares():
    got = Series([1, -1], 12).reciprocal().compose(Series.monomial(1, 2, 12))
    want = Series([1 if n % 2 == 0 else 0 for n in range(13)], 12)
    assert got == want


def test_compose_sqrt_binomial_oracle():
    # sqrt(1+t) composed with 4t^2 has the binomial expansion of sqrt(1+4t^2)
    got = Series([1, 1], 12).sqrt().compose(Series.monomial(4, 2, 12))
    want = binomial_series(Fraction(1, 2), 4, 6)
    assert [got.coeffs[2 * k] for k in range(7)] == want.coeffs
    assert all(got.coeffs[2 * k + 1] == 0 for k in range(6))


def test_compose_nonzero_inner_raises():
    with pytest.raises(NonzeroInnerConstant):
        Series([1, 1], 4).compose(Series.one(4))


# --- sqrt --------------------------------------------------------------------

def test_sqrt_one():
    assert Series.one(N).sqrt() == Series.one(N)


def test_sqrt_binomial_oracle():
    got = Series([1, -4], 8).sqrt()
    assert got == binomial_series(Fraction(1, 2), -4, 8)
    assert got.coeffs[:5] == [QQ(1), QQ(-2), QQ(-2), QQ(-4), QQ(-10)]


def test_sqrt_perfect_square():
    a = Series([1, 0, -7], 10)
    assert (a * a).sqrt() == a


def test_sqrt_non_square_raises():
    with pytest.raises(NonSquareConstant):
        Series([2, 1], 4).sqrt()
    with pytest.raises(NonSquareConstant):
        Series([-1, 1], 4).sqrt()


# --- revert ------------------------------------------------------------------

def test_revert_identity():
    assert Series.t(8).revert() == Series.t(8)


def test_revert_catalan():
    a = Series.t(9) * Series([1, 0, 1], 9).reciprocal()   # t/(1+t^2)
    got = a.revert()
    assert got == lagrange_inversion(a)
    assert [got.coeffs[k] for k in (1, 3, 5, 7)] == [QQ(1), QQ(1), QQ(2), QQ(5)]


def test_revert_matches_surd_quotient_d8():
    # revert(t/(1+7t^2)) equals (1 - sqrt(1-28t^2)) / (14t)
    n = 14
    a = Series.t(n) * Series([1, 0, 7], n).reciprocal()
    direct = (Series.one(n + 1) - Series([1, 0, -28], n + 1).sqrt()).shift_down(1) / 14
    assert a.revert() == direct


def test_revert_preconditions():
    with pytest.raises(NotInvertible):
        Series([1, 1], 4).revert()
    with pytest.raises(NotInvertible):
        Series([0, 0, 1], 4).revert()


# --- dominates ---------------------------------------------------------------

def test_dominates_reflexive():
    a = Series([1, 2, 3], 6)
    assert dominates(a, a)


def test_dominates_scaled_geometric():
    assert dominates(2 * geometric_series(1, 8), geometric_series(1, 8))


def test_dominates_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        dominates(Series.one(4), Series.one(5))


@given(series_strategy(6), series_strategy(6), series_strategy(6))
def test_dominates_partial_order(a, b, c):
    if dominates(a, b) and dominates(b, a):
        assert a == b
    if dominates(a, b) and dominates(b, c):
        assert dominates(a, c)


# --- bi_substitute -----------------------------------------------------------

def test_bi_substitute_u_zero_is_specialization():
    H = cogrowth_transform(tree_green(8, 10), 8)
    got = bi_substitute(H, Series.t(10), Series.zero(10))
    assert got == H.specialize_u(0)


def test_bi_substitute_u_one_recovers_green():
    # the backtrack-marking lift evaluated at u = 1 forgets the marks
    h = tree_green(8, 10)
    H = cogrowth_transform(h, 8)
    assert bi_substitute(H, Series.t(10), Series.one(10)) == h


# --- ring axioms (property) --------------------------------------------------

@given(series_strategy(), series_strategy())
def test_add_mul_commutative(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(series_strategy(), series_strategy(), series_strategy())
def test_assoc_and_distributive(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(series_strategy(nonzero_const=True))
def test_reciprocal_inverse(a):
    assert a * a.reciprocal() == Series.one(a.trunc_order)


@given(series_strategy())
def test_sqrt_of_square(a):
    sq = a * a
    if sq.coeffs[0] == 0:
        return
    root = sq.sqrt()
    assert root * root == sq


@given(st.lists(rationals, min_size=7, max_size=7),
       rationals.filter(lambda q: q != 0))
def test_compose_revert_roundtrip(tail, lead):
    a = Series([0, lead] + tail, 8)
    e = a.revert()
    assert e.compose(a) == Series.t(8)
    assert a.compose(e) == Series.t(8)


def test_min_truncation_rule():
    a = Series([1, 1, 1, 1], 3)
    b = Series([1, 1], 6)
    assert (a + b).trunc_order == 3
    assert (a * b).trunc_order == 3
    assert a.compose(Series.t(9)).trunc_order == 3


# --- BiSeries degree bound ---------------------------------------------------

def test_biseries_degree_bound_enforced():
    with pytest.raises(ValueError):
        BiSeries([[1], [0, 1, 1]], 1)   # degree 2 at t^1


def test_biseries_ops_preserve_degree_bound():
    A = BiSeries([[1], [0, 1], [2, 0, 1]], 6)
    B = BiSeries([[1], [1, -1], [0, 3]], 6)
    for result in (A + B, A * B, A.reciprocal(), (A * A).sqrt()):
        assert result.validate_degree_bound()


def test_biseries_sqrt_reciprocal_roundtrip():
    A = BiSeries([[1], [0, 2], [1, 0, -3], [0, QQ(1, 2)]], 8)
    assert A * A.reciprocal() == BiSeries([[1]], 8)
    S = (A * A).sqrt()
    assert S == A or S == -1 * A


# --- serialization -----------------------------------------------------------

def test_csv_roundtrip_exact():
    a = Series([QQ(3, 7), QQ(-22, 5), 0, 11], 5)
    assert Series.from_csv(a.to_csv()) == a


def test_json_roundtrip_exact():
    a = tree_green(6, 9)
    assert Series.from_json_coeffs(a.to_json_coeffs()) == a


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        Series([1.0, 2.0], 3)
