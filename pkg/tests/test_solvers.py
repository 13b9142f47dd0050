"""Tests for the scalar stage: discount equations, radius of convergence,
closed-form bounds, and sequence acceleration."""

import math

import mpmath
import pytest
from mpmath import mp, mpf

from specrad.errors import DomainError
from specrad.series import QQ
from specrad.solvers import (
    aitken,
    growth_rate_estimate,
    isoperimetric_bounds,
    kesten_bound,
    paschke_bound,
    radius_of_convergence,
    solve_zeta_generic,
    solve_zeta_lll,
    solve_zeta_surface,
    surface_simple_bounds,
)
from specrad.transforms import Explicit, ProblemSpec


# --- zeta equations -----------------------------------------------------------

def test_zeta_generic_free_is_one():
    res = solve_zeta_generic(ProblemSpec.free(8))
    assert res.zeta == 1 and res.residual == 0


def test_zeta_generic_surface_spec():
    res = solve_zeta_generic(ProblemSpec.tessellation(8, 8))
    # first-order root of z - 1 + 2 z^(2-m) / (d-1)^(m-1) = 0
    approx = 2 / mpf(7) ** 7
    assert res.residual <= mpf("1e-25")
    assert abs(res.deviation - approx) < approx / 100
    lo, hi = res.bracket
    assert lo <= res.zeta <= hi


def test_zeta_surface_first_order_oracle():
    # deviation ~ 2(d-1)/(d^(m-1)-1), the value of the correction term at 1
    for d, m in ((8, 8), (12, 12)):
        res = solve_zeta_surface(d, m)
        approx = 2 * (d - 1) / (mpf(d) ** (m - 1) - 1)
        assert abs(res.deviation - approx) < approx / 100
        assert res.residual <= mpf("1e-25")
        assert res.equation_id == "surface"


def test_zeta_surface_monotone_in_m():
    devs = [solve_zeta_surface(8, m).deviation for m in (8, 16, 32)]
    assert devs[0] > devs[1] > devs[2] > 0


def test_zeta_rational_lower_is_lower():
    from specrad.solvers import _mpf_to_fraction
    res = solve_zeta_surface(8, 8)
    lo = res.rational_lower()
    # exact comparison against the certified bracket low end
    assert QQ(lo.numerator, lo.denominator) <= QQ(_mpf_to_fraction(res.bracket[0]))
    assert 0 < lo < 1


def test_zeta_lll_no_forbidden_words():
    res = solve_zeta_lll(8, 7, {})
    assert res.zeta == 1


def test_zeta_lll_surface_alphabet():
    # 16 forbidden factors of length 7 over the 8-letter reduced alphabet
    res = solve_zeta_lll(8, 7, {7: 16})
    # z - 1 + (7z/8) * 16 * (7z)^-7 = 0 => deviation ~ 14/7^7
    approx = 14 / mpf(7) ** 7
    assert abs(res.deviation - approx) < approx / 100


# --- radius of convergence ------------------------------------------------------

def test_radius_genus2():
    spec = ProblemSpec.tessellation(8, 8)
    z = solve_zeta_surface(8, 8)
    r = radius_of_convergence(spec, z.zeta)
    assert abs(r.alpha - mpf("0.357936")) < mpf("2e-6")
    assert abs(r.rho - mpf("0.188702")) < mpf("2e-6")
    assert r.surd_vanishes and r.method == "scan"
    # conservative rounding: exact bound_lower matches the mpf bound
    assert r.bound_lower == QQ(1) / (8 * r.rho_upper)


def test_radius_tree_branch_point():
    spec = ProblemSpec.free(8)
    r = radius_of_convergence(spec, mpf(1))
    assert not r.surd_vanishes
    assert r.bound == kesten_bound(8)
    with mp.workdps(40):
        assert abs(r.rho - 1 / (2 * mpmath.sqrt(mpf(7)))) < mpf("1e-25")


def test_radius_bounds_sandwich():
    # kesten <= cactus bound, and rho below the tree branch point
    for d, m in ((8, 8), (12, 12), (4, 4), (5, 4)):
        spec = ProblemSpec.tessellation(d, m)
        z = solve_zeta_surface(d, m)
        r = radius_of_convergence(spec, z.zeta)
        assert r.bound >= kesten_bound(d) - mpf("1e-28")
        assert r.rho <= 1 / (2 * mpmath.sqrt(mpf(d - 1))) + mpf("1e-28")


def test_bound_monotone_under_precision_doubling():
    spec = ProblemSpec.tessellation(8, 8)
    bounds = []
    for prec in (15, 30, 60):
        z = solve_zeta_surface(8, 8, prec)
        r = radius_of_convergence(spec, z.zeta, prec)
        bounds.append(r.bound_lower)
    assert bounds[0] <= bounds[1] <= bounds[2]


# --- closed-form bounds -----------------------------------------------------------

def test_kesten_values():
    with mp.workdps(50):
        assert abs(kesten_bound(4) - mpmath.sqrt(mpf(3)) / 2) < mpf("1e-25")
        assert abs(kesten_bound(8) - 2 * mpmath.sqrt(mpf(7)) / 8) < mpf("1e-25")
    assert kesten_bound(2) == 1


def test_paschke_sandwich_d8():
    res = paschke_bound(8, 8)
    assert kesten_bound(8) < res.value < mpf("0.662418")


def test_paschke_long_cycles_approach_kesten():
    # k -> infinity: longer relations constrain less; at k = 64 the value is
    # already within working precision of the tree floor
    res = paschke_bound(8, 64)
    assert abs(res.value - kesten_bound(8)) < mpf("1e-12")


def test_paschke_grid_oracle():
    # golden-section result matches a dense independent grid scan
    res = paschke_bound(4, 3)
    with mp.workdps(40):
        def Q(t):
            return (mpmath.sqrt(t * t + 1) - 1) / t

        def phi(s):
            return 2 * mpmath.cosh(s) + 2 * Q(
                (mpmath.cosh(3 * s) + 1) / (mpmath.sinh(s) * mpmath.sinh(3 * s)))

        grid_min = min(phi(mpf("0.3") + mpf(i) / 1000) for i in range(800)) / 4
        assert abs(res.value - grid_min) < mpf("1e-6")
        assert abs(phi(res.argmin_s) / 4 - res.value) < mpf("1e-30")


def test_surface_simple_bounds():
    lo2, up2 = surface_simple_bounds(2)
    lo3, up3 = surface_simple_bounds(3)
    with mp.workdps(50):
        assert abs(lo2 - mpmath.sqrt(mpf(7)) / 4) < mpf("1e-25")
        assert abs(lo3 - mpmath.sqrt(mpf(11)) / 6) < mpf("1e-25")
    assert up2 == 1              # (sqrt(5)+2)/4 > 1, clamped
    assert up3 < 1


def test_isoperimetric_values():
    iota, lo, hi = isoperimetric_bounds(8, 8)
    with mp.workdps(40):
        assert abs(iota - 4 * mpmath.sqrt(mpf(2))) < mpf("1e-12")
    # reference endpoints are truncated, not rounded (lo = 0.43152...)
    assert math.floor(float(lo) * 1000) / 1000 == 0.431
    assert math.floor(float(hi) * 1000) / 1000 == 0.707
    iota44, lo44, hi44 = isoperimetric_bounds(4, 4)
    assert iota44 == 0 and lo44 == 1 and hi44 == 1
    with pytest.raises(DomainError):
        isoperimetric_bounds(3, 4)


def test_isoperimetric_d5_m4_consistency():
    # high-precision recompute of the closed form
    iota, lo, hi = isoperimetric_bounds(5, 4)
    with mp.workdps(60):
        want = 3 * mpmath.sqrt(1 - mpf(4) / 6)
        assert abs(iota - want) < mpf("1e-25")


# --- acceleration helpers -----------------------------------------------------------

def test_aitken_exact_on_geometric():
    with mp.workdps(30):
        seq = [mpf(5) + 3 * mpf("0.8") ** n for n in range(10)]
        out = aitken(seq)
        assert all(abs(x - 5) < mpf("1e-20") for x in out)


def test_growth_rate_estimate_central_binomials():
    # C(2n, n) ~ 4^n n^(-1/2): exponent -1/2, limit ratio 4
    coeffs = [math.comb(2 * n, n) for n in range(170)]
    est = growth_rate_estimate(coeffs, tail_start=80, passes=3, exponent=-0.5)
    assert abs(est - 4) < mpf("1e-5")
