"""Scalar root-finding and optimization: discount-factor equations, the
radius of convergence of the undercount series, and closed-form bounds.

All roots and minima are bracketed and solved with mpmath at a configurable
working precision (default 30 digits, with guard digits).  Rounding is
directional where it matters: zeta is rounded down and the radius up, so the
final bound 1/(d*rho) is conservative under all numerical error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .errors import DomainError, MinimizationFailed, NoRootInUnitInterval
from .series import QQ, is_exact
from .transforms import ProblemSpec

DEFAULT_PRECISION = 30
_SCAN_PIECES = 1 << 10


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -val if sign else val


def _truncate_down(x, digits) -> QQ:
    """Largest p/10^digits below (or equal to) x."""
    scale = 10 ** digits
    fr = _mpf_to_fraction(x) * scale
    return QQ(fr.numerator // fr.denominator, scale)


def _truncate_up(x, digits) -> QQ:
    scale = 10 ** digits
    fr = _mpf_to_fraction(x) * scale
    return QQ(-((-fr.numerator) // fr.denominator), scale)


def _qq_truncate_up(fr, digits) -> QQ:
    scale = 10 ** digits
    num, den = fr.numerator, fr.denominator
    return QQ(-((-num * scale) // den), scale)


@dataclass(frozen=True)
class ZetaResult:
    zeta: object            # mpf, the bracket midpoint (or exact 1)
    equation_id: str        # generic | localsg | surface
    residual: object
    bracket: tuple          # (lo, hi) with a sign change, lo <= root <= hi
    precision: int

    @property
    def deviation(self):
        return 1 - self.zeta

    def rational_lower(self, digits=None) -> QQ:
        """Exact rational <= the true root; safe for the undercount pipeline."""
        if self.zeta == 1:
            return QQ(1)
        return _truncate_down(self.bracket[0], digits or self.precision)

    def to_json(self):
        return {
            "zeta": mpmath.nstr(self.zeta, self.precision),
            "equation": self.equation_id,
            "residual": mpmath.nstr(self.residual, 3),
            "bracket": [mpmath.nstr(b, self.precision + 2) for b in self.bracket],
            "rounding": "down",
        }


@dataclass(frozen=True)
class RadiusResult:
    alpha: object           # mpf (rounded up at the stated precision)
    rho: object             # mpf (rounded up)
    bound: object           # mpf: 1/(d*rho), conservative
    method: str             # always "scan": grid scan + bisection
    alpha_upper: object     # exact rational >= alpha
    rho_upper: object       # exact rational >= rho
    bound_lower: object     # exact rational <= 1/(d*rho)
    surd_vanishes: bool
    precision: int

    def to_json(self):
        return {
            "alpha": mpmath.nstr(self.alpha, self.precision),
            "rho": mpmath.nstr(self.rho, self.precision),
            "lower_bound": mpmath.nstr(self.bound, self.precision),
            "method": self.method,
            "surd_vanishes": self.surd_vanishes,
            "rounding": {"alpha": "up", "rho": "up", "lower_bound": "down"},
        }


@dataclass(frozen=True)
class PaschkeResult:
    value: object           # (1/d) * min_s of the cycle-cover edge functional
    argmin_s: object
    bracket: tuple          # (a, b) enclosing the argmin

    def to_json(self):
        return {
            "value": mpmath.nstr(self.value, 25),
            "argmin_s": mpmath.nstr(self.argmin_s, 15),
            "bracket": [mpmath.nstr(b, 15) for b in self.bracket],
        }


def _bisect_root(fun, lo, hi, flo, fhi, bits):
    """Shrink [lo, hi] with fun(lo)*fun(hi) <= 0 down to 2^-bits relative width."""
    for _ in range(bits):
        mid = (lo + hi) / 2
        fm = fun(mid)
        if fm == 0:
            return mid, mid
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo, hi


def _largest_root_in_unit_interval(fun, precision, equation_id):
    """Scan (0, 1] from the right in 2^10 pieces; bisect the first sign change."""
    with mp.workdps(precision + 15):
        f1 = fun(mpf(1))
        if f1 == 0:
            return ZetaResult(zeta=mpf(1), equation_id=equation_id, residual=mpf(0),
                              bracket=(mpf(1), mpf(1)), precision=precision)
        hi, fhi = mpf(1), f1
        found = None
        for i in range(1, _SCAN_PIECES + 1):
            lo = mpf(_SCAN_PIECES - i) / _SCAN_PIECES
            if lo == 0:
                lo = mpf(1) / (_SCAN_PIECES * 1000)
            flo = fun(lo)
            if flo == 0:
                found = (lo, lo, flo, flo)
                break
            if (flo < 0) != (fhi < 0):
                found = (lo, hi, flo, fhi)
                break
            hi, fhi = lo, flo
        if found is None:
            raise NoRootInUnitInterval(
                "no sign change in (0, 1]; prime-circuit family too dense")
        lo, hi, flo, fhi = found
        bits = int((precision + 10) * 3.33) + 4
        lo, hi = _bisect_root(fun, lo, hi, flo, fhi, bits)
        mid = (lo + hi) / 2
        return ZetaResult(zeta=mid, equation_id=equation_id, residual=abs(fun(mid)),
                          bracket=(lo, hi), precision=precision)


def solve_zeta_generic(spec: ProblemSpec, precision=DEFAULT_PRECISION) -> ZetaResult:
    """Solve z - 1 + (1 - 1/d) * z * f(z^(eta-1)/(d-1)) = 0, largest root in (0,1].

    The per-step survival discount for circuits avoiding long prime-circuit
    prefixes; f = 0 gives z = 1 exactly.
    """
    d = spec.d
    if spec.is_free:
        return ZetaResult(zeta=mpf(1), equation_id="generic", residual=mpf(0),
                          bracket=(mpf(1), mpf(1)), precision=precision)
    eta = mpf(spec.eta.numerator) / spec.eta.denominator

    def fun(z):
        return z - 1 + (1 - mpf(1) / d) * z * spec.f_eval(z ** (eta - 1) / (d - 1))

    return _largest_root_in_unit_interval(fun, precision, "generic")


def solve_zeta_lll(alphabet_size, growth_rate, forbidden_counts,
                   precision=DEFAULT_PRECISION) -> ZetaResult:
    """General survival-probability equation for factor-avoiding words:
    z - 1 + (rho*z/#A) * Phi(1/(rho*z)) = 0 with Phi(x) = sum c_l x^l.

    ``forbidden_counts`` maps word length -> number of forbidden words; the
    counts of avoiding words of length n are at least (rho*z)^n.
    """
    if not forbidden_counts:
        return ZetaResult(zeta=mpf(1), equation_id="localsg", residual=mpf(0),
                          bracket=(mpf(1), mpf(1)), precision=precision)
    items = sorted(forbidden_counts.items())

    def fun(z):
        x = 1 / (growth_rate * z)
        phi = sum(c * x ** l for l, c in items)
        return z - 1 + (growth_rate * z / alphabet_size) * phi

    return _largest_root_in_unit_interval(fun, precision, "localsg")


def solve_zeta_surface(d, m, precision=DEFAULT_PRECISION) -> ZetaResult:
    """Refined discount for the {m,d} tessellation via the forbidden-factor
    generating bound: the 2d prime m-circuits forbid, per position, the 2d
    periodic factors of length m-1; the avoiding-word series is minorized by
    1/(1 - d t + 2d t^(m-1)(1-t)/(1-t^(m-1))) and z = 1/(d t0) at its least
    positive pole gives

        z - 1 + 2 * (d*z - 1) / ((d*z)^(m-1) - 1) = 0,

    evaluated in the pole-free form z - 1 + 2 / sum_{j<m-1} (d*z)^j.
    Largest positive root; it is 1 - O(exp(-d)).
    """
    if d < 3 or m < 3:
        raise DomainError("surface equation needs d >= 3 and m >= 3")

    def fun(z):
        a = d * z
        acc = mpf(1)
        p = mpf(1)
        for _ in range(m - 2):
            p = p * a
            acc = acc + p
        return z - 1 + 2 / acc

    return _largest_root_in_unit_interval(fun, precision, "surface")


def _surd_argument(spec: ProblemSpec, zeta):
    """The expression whose least positive zero is the g2 singularity.

    1 - 4(d-1) * (zeta * W(t))^2 with W = T/(1 + (1-U)(d-1+U)T^2) evaluated at
    zeta = 1 inside, T = t(d-f)/(d-(d-1)f), U = (d-2)f/(d-f); zeta multiplies
    W once, matching the closed form used for the reported constants.
    """
    d = spec.d

    def fun(t):
        fv = spec.f_eval(t)
        den1 = d - (d - 1) * fv
        den2 = d - fv
        if den1 == 0 or den2 == 0:
            raise DomainError("insertion series pole inside the scan range")
        T = t * (d - fv) / den1
        U = (d - 2) * fv / den2
        W = T / (1 + (1 - U) * (d - 1 + U) * T * T)
        return 1 - 4 * (d - 1) * (zeta * W) ** 2

    return fun


def radius_of_convergence(spec: ProblemSpec, zeta, precision=DEFAULT_PRECISION) -> RadiusResult:
    """Radius of convergence of g3 and the bound 1/(d*rho).

    alpha = least positive zero of the surd argument of g2, found by a
    2^10-piece scan plus bisection, rounded up; rho = alpha/(1+(d-1)alpha^2)
    when alpha <= 1/sqrt(d-1), else the tree branch point 1/(2 sqrt(d-1)).
    Overestimating rho only weakens the bound, keeping it valid.
    """
    d = spec.d
    with mp.workdps(precision + 15):
        if is_exact(zeta):
            zeta_mpf = mpf(zeta.numerator) / zeta.denominator
        else:
            zeta_mpf = mpf(zeta)
        fun = _surd_argument(spec, zeta_mpf)
        t_max = 1 / mpmath.sqrt(mpf(d - 1))
        lo, flo = None, None
        found = None
        for i in range(1, _SCAN_PIECES + 1):
            t = t_max * i / _SCAN_PIECES
            ft = fun(t)
            if ft == 0:
                found = (t, t, ft, ft)
                break
            if flo is not None and (ft < 0) != (flo < 0):
                found = (lo, t, flo, ft)
                break
            lo, flo = t, ft
        if found is None:
            # tree-dominated regime: the surd never vanishes before the
            # branch point of h, so rho is the branch point itself
            branch = 1 / (2 * mpmath.sqrt(mpf(d - 1)))
            alpha_up = _truncate_up(t_max, precision)
            rho_up = _truncate_up(branch, precision)
            bound_low = QQ(1) / (d * rho_up)
            return RadiusResult(alpha=t_max, rho=branch, bound=kesten_bound(d),
                                method="scan", alpha_upper=alpha_up,
                                rho_upper=rho_up,
                                bound_lower=bound_low, surd_vanishes=False,
                                precision=precision)
        a, b, fa, fb = found
        bits = int((precision + 10) * 3.33) + 4
        a, b = _bisect_root(fun, a, b, fa, fb, bits)
        alpha_up = _truncate_up(b, precision)
        if alpha_up * alpha_up * (d - 1) <= 1:
            rho_up = _qq_truncate_up(alpha_up / (1 + (d - 1) * alpha_up * alpha_up),
                                     precision)
        else:
            rho_up = _truncate_up(1 / (2 * mpmath.sqrt(mpf(d - 1))), precision)
        bound_low = QQ(1) / (d * rho_up)
        alpha_mpf = mpf(alpha_up.numerator) / alpha_up.denominator
        rho_mpf = mpf(rho_up.numerator) / rho_up.denominator
        bound_mpf = mpf(bound_low.numerator) / bound_low.denominator
        return RadiusResult(alpha=alpha_mpf, rho=rho_mpf, bound=bound_mpf,
                            method="scan", alpha_upper=alpha_up, rho_upper=rho_up,
                            bound_lower=bound_low, surd_vanishes=True,
                            precision=precision)


def kesten_bound(d, precision=DEFAULT_PRECISION):
    """2*sqrt(d-1)/d: the d-regular tree value, a floor for every d-regular graph."""
    if d < 2:
        raise DomainError("degree must be >= 2")
    with mp.workdps(precision + 15):
        return 2 * mpmath.sqrt(mpf(d - 1)) / d


def paschke_bound(d, k, precision=DEFAULT_PRECISION) -> PaschkeResult:
    """Lower bound for d-regular vertex-transitive graphs with a k-cycle at
    every vertex: (1/d) * min over s > 0 of

        2*cosh(s) + (d-2) * Q((cosh(ks)+1)/(sinh(s)*sinh(ks))),

    Q(t) = (sqrt(t^2+1)-1)/t, by golden-section search on a bracketed minimum.
    The printed functional computes the norm of the degree-normalized
    adjacency times d, hence the 1/d (validated against the free-product
    Green-function oracle for P_{3,4}).
    """
    if d < 3 or k < 3:
        raise DomainError("paschke bound needs d >= 3 and k >= 3")
    with mp.workdps(precision + 15):
        def Q(t):
            return (mpmath.sqrt(t * t + 1) - 1) / t

        def phi(s):
            return 2 * mpmath.cosh(s) + (d - 2) * Q(
                (mpmath.cosh(k * s) + 1) / (mpmath.sinh(s) * mpmath.sinh(k * s)))

        # bracket the minimum on a log grid in (1e-6, 50)
        ratio = mpf(50) / mpf("1e-6")
        grid = [mpf("1e-6") * ratio ** (mpf(i) / 400) for i in range(401)]
        vals = [phi(s) for s in grid]
        tri = None
        for i in range(1, len(grid) - 1):
            if vals[i] < vals[i - 1] and vals[i] <= vals[i + 1]:
                tri = i
                break
        if tri is None:
            raise MinimizationFailed("no interior minimum bracketed in s in (1e-6, 50)")
        a, b = grid[tri - 1], grid[tri + 1]
        gr = (mpmath.sqrt(5) - 1) / 2
        c1 = b - gr * (b - a)
        c2 = a + gr * (b - a)
        f1, f2 = phi(c1), phi(c2)
        tol = mpf(10) ** (-(precision // 2) - 5)
        while b - a > tol:
            if f1 < f2:
                b, c2, f2 = c2, c1, f1
                c1 = b - gr * (b - a)
                f1 = phi(c1)
            else:
                a, c1, f1 = c1, c2, f2
                c2 = a + gr * (b - a)
                f2 = phi(c2)
        smin = (a + b) / 2
        return PaschkeResult(value=phi(smin) / d, argmin_s=smin, bracket=(a, b))


def surface_simple_bounds(g, precision=DEFAULT_PRECISION):
    """Quotient/subgroup sandwich for the genus-g surface group:
    sqrt(4g-1)/(2g) <= ||M|| <= (sqrt(4g-3)+2)/(2g); the upper value is
    clamped at 1 (it exceeds 1 for g = 2, where it is vacuous).
    """
    if g < 2:
        raise DomainError("genus must be >= 2")
    with mp.workdps(precision + 15):
        lower = mpmath.sqrt(mpf(4 * g - 1)) / (2 * g)
        upper = (mpmath.sqrt(mpf(4 * g - 3)) + 2) / (2 * g)
        return lower, min(upper, mpf(1))


def isoperimetric_bounds(d, m, precision=DEFAULT_PRECISION):
    """Edge-isoperimetric constant of the {m,d} tessellation and the spectral
    sandwich it implies:

        iota = (d-2) * sqrt(1 - 4/((d-2)(m-2))),
        (d^2-(d-2)iota)/(d^2+iota) <= ||M|| <= sqrt(1 - iota^2/d^2).
    """
    if (d - 2) * (m - 2) < 4:
        raise DomainError("(d-2)(m-2) >= 4 required")
    with mp.workdps(precision + 15):
        iota = (d - 2) * mpmath.sqrt(1 - mpf(4) / ((d - 2) * (m - 2)))
        lower = (d * d - (d - 2) * iota) / (d * d + iota)
        upper = mpmath.sqrt(1 - iota * iota / (d * d))
        return iota, lower, upper


# sequence acceleration for coefficient growth estimates ----------------------

def aitken(seq):
    """One Aitken delta-squared pass; exact on geometric error terms."""
    out = []
    for i in range(len(seq) - 2):
        x0, x1, x2 = seq[i], seq[i + 1], seq[i + 2]
        d2 = x2 - 2 * x1 + x0
        out.append(x2 - (x2 - x1) ** 2 / d2 if d2 != 0 else x2)
    return out


def growth_rate_estimate(coeffs, tail_start=100, passes=3, exponent=-1.5):
    """Estimate lim c_n^(1/n) from c_{n+2}/c_n ratios, Aitken-accelerated.

    For algebraic square-root singularities c_n ~ C R^n n^(-3/2); the ratio
    estimates x_n = sqrt(c_{n+2}/c_n) approach R like R(1 + exponent/n), so
    each is divided by (1 + exponent/n) before the (iterated) Aitken passes.
    Needs exact integer/rational coefficients for a clean tail.
    """
    n_max = len(coeffs) - 3
    if n_max - tail_start < 8:
        raise DomainError("not enough coefficients for the requested tail")
    with mp.workdps(40):
        seq = []
        for n in range(tail_start, n_max + 1):
            c0, c2 = coeffs[n], coeffs[n + 2]
            if not c0 or not c2:
                raise DomainError("zero coefficient in the ratio tail")
            x = mpmath.sqrt(_to_mpf(c2) / _to_mpf(c0))
            seq.append(x / (1 + mpf(exponent) / n))
        for _ in range(passes):
            if len(seq) < 3:
                break
            seq = aitken(seq)
        return seq[-1]


def _to_mpf(c):
    if isinstance(c, int):
        return mpf(c)
    if is_exact(c):
        return mpf(c.numerator) / c.denominator
    return mpf(c)
