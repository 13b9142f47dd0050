"""Series transforms: tree Green function, the circuit-saturation (cogrowth)
transform, the three-stage circuit-undercount pipeline, and Green-function
composition for free products of graphs.

All transforms are pure functions of immutable inputs.  They run in exact
rational mode when the discount ``zeta`` is rational (including the tree case
zeta = 1) and in high-precision float mode when it is an mpmath float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import mpmath

from .errors import DomainError
from .series import BiSeries, QQ, Series, _padd, _pmul, is_exact


@dataclass(frozen=True)
class Monomial:
    """f(t) = count * t**length: a single length class of prime circuits."""
    count: int
    length: int

    def __post_init__(self):
        if self.count < 0 or self.length < 1:
            raise DomainError("monomial needs count >= 0 and length >= 1")


@dataclass(frozen=True)
class Explicit:
    """f(t) = sum coeffs[n] * t**n: prime-circuit counts graded by length."""
    coeffs: tuple

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs):
            raise DomainError("prime-circuit counts must be nonnegative")


@dataclass(frozen=True)
class ProblemSpec:
    """Degree d, overlap parameter eta, and the prime-circuit growth series f."""
    d: int
    eta: object  # exact rational in (0, 1)
    f_spec: Union[Monomial, Explicit]

    def __post_init__(self):
        if self.d < 3:
            raise DomainError("vertex degree must be >= 3")
        eta = self.eta
        if not (0 < eta < 1):
            raise DomainError("eta must lie in (0, 1)")
        if isinstance(self.f_spec, Monomial) and self.f_spec.count:
            if eta * self.f_spec.length < 1:
                raise DomainError("monomial case needs eta * length >= 1")

    @classmethod
    def tessellation(cls, d, m):
        """The {m-gon, d per vertex} plane tessellation: f = 2d t^m, eta = 1/m."""
        if (d - 2) * (m - 2) < 4:
            raise DomainError("(d-2)(m-2) >= 4 required for a plane tessellation")
        return cls(d=d, eta=QQ(1, m), f_spec=Monomial(count=2 * d, length=m))

    @classmethod
    def genus(cls, g):
        """Surface group of genus g >= 2 with standard generators: d = m = 4g."""
        if g < 2:
            raise DomainError("genus must be >= 2")
        return cls.tessellation(4 * g, 4 * g)

    @classmethod
    def free(cls, d):
        """No relators: the d-regular tree."""
        if d < 3:
            raise DomainError("vertex degree must be >= 3")
        return cls(d=d, eta=QQ(1, 2), f_spec=Explicit(coeffs=()))

    @property
    def is_free(self):
        if isinstance(self.f_spec, Monomial):
            return self.f_spec.count == 0
        return not any(self.f_spec.coeffs)

    @property
    def monomial_length(self):
        return self.f_spec.length if isinstance(self.f_spec, Monomial) else None

    def f_series(self, n) -> Series:
        if isinstance(self.f_spec, Monomial):
            return Series.monomial(self.f_spec.count, self.f_spec.length, n)
        return Series(list(self.f_spec.coeffs) or [0], n)

    def f_eval(self, t):
        """Evaluate f at a scalar (mpf or rational)."""
        if isinstance(self.f_spec, Monomial):
            return self.f_spec.count * t ** self.f_spec.length
        acc = 0 * t
        for c in reversed(self.f_spec.coeffs):
            acc = acc * t + c
        return acc


@dataclass(frozen=True)
class PipelineResult:
    h: Series
    H: BiSeries
    g1: BiSeries
    g2: Series
    g3: Series
    zeta_used: object

    def to_json(self):
        def ser(s: Series):
            if s.is_exact():
                return s.to_json_coeffs()
            return [mpmath.nstr(c, 30) for c in s.coeffs]

        def biser(b: BiSeries):
            table = b.to_table()
            if is_exact(table[0][0]):
                return [[f"{c.numerator}/{c.denominator}" for c in row] for row in table]
            return [[mpmath.nstr(c, 30) for c in row] for row in table]

        if is_exact(self.zeta_used):
            zeta = f"{self.zeta_used.numerator}/{self.zeta_used.denominator}"
        else:
            zeta = mpmath.nstr(self.zeta_used, 40)
        return {
            "h": ser(self.h), "H": biser(self.H), "g1": biser(self.g1),
            "g2": ser(self.g2), "g3": ser(self.g3), "zeta_used": zeta,
        }


def tree_green(d, n) -> Series:
    """Closed-walk generating series at a vertex of the d-regular tree.

    2(d-1) / (d - 2 + d*sqrt(1 - 4(d-1)t^2)); the t^n coefficient counts the
    closed walks of length n.
    """
    if d < 2:
        raise DomainError("tree degree must be >= 2")
    s = Series([1, 0, -4 * (d - 1)], n).sqrt()
    return (2 * (d - 1)) * (d - 2 + d * s).reciprocal()


def cycle_green(k, n) -> Series:
    """Closed-walk counts at a vertex of the k-cycle, by direct iteration."""
    if k < 3:
        raise DomainError("cycle length must be >= 3")
    counts = [1]
    v = [1] + [0] * (k - 1)
    for _ in range(n):
        v = [v[i - 1] + v[(i + 1) % k] for i in range(k)]
        counts.append(v[0])
    return Series(counts, n)


def cogrowth_transform(g: Series, d, n=None) -> BiSeries:
    """Lift a circuit series to its two-variable backtrack-marking refinement.

    Given the plain generating series g(t) of a saturated circuit family in a
    d-regular graph, returns B(t, u) counting the same circuits by length and
    number of backtrack positions, so that B(t, 1) = g and B(t, 0) counts the
    reduced members.  Uses the closed form

        B(t, u) = (1 - (1-u)^2 t^2) * sum_j g_j t^j (1 + c(u) t^2)^-(j+1),
        c(u) = (1-u)(d-1+u),

    with the binomial expansion of each negative power.
    """
    if n is None:
        n = g.trunc_order
    n = min(n, g.trunc_order)
    if g.coeffs[0] != 1:
        raise DomainError("input must be a Green-type series with constant term 1")
    exact = g.is_exact()
    one = g.coeffs[0] * 0 + 1
    c_poly = [QQ(d - 1), QQ(2 - d), QQ(-1)]
    w2 = [QQ(1), QQ(-2), QQ(1)]
    if not exact:
        c_poly = [mpmath.mpf(d - 1), mpmath.mpf(2 - d), mpmath.mpf(-1)]
        w2 = [mpmath.mpf(1), mpmath.mpf(-2), mpmath.mpf(1)]
    cpow = [[one]]
    for _ in range(n // 2):
        cpow.append(_pmul(cpow[-1], c_poly))
    pre = [[one * 0] for _ in range(n + 1)]
    for j, gj in enumerate(g.coeffs[:n + 1]):
        if not gj:
            continue
        for k in range((n - j) // 2 + 1):
            coef = gj * math.comb(j + k, k) * (-1 if k % 2 else 1)
            pre[j + 2 * k] = _padd(pre[j + 2 * k], [coef * c for c in cpow[k]])
    out = [list(pre[0]), list(pre[1])] if n >= 1 else [list(pre[0])]
    for i in range(2, n + 1):
        out.append(_padd(pre[i], [-c for c in _pmul(w2, pre[i - 2])]))
    return BiSeries(out[:n + 1], n)


def tree_spiky_closed_form(d, n) -> BiSeries:
    """The tree's backtrack-marking series by its algebraic closed form.

    2(d-1)(1-w^2 t^2) / ((d-2)(1+w(d-w)t^2) + d*sqrt((1+w(d-w)t^2)^2-4(d-1)t^2))
    with w = 1-u.  Cross-check surface for cogrowth_transform(tree_green(d)).
    """
    c_poly = [QQ(d - 1), QQ(2 - d), QQ(-1)]     # w(d-w) with w = 1-u
    w2 = [QQ(1), QQ(-2), QQ(1)]                 # w^2
    A = BiSeries([[1], [0], c_poly], n)         # 1 + w(d-w) t^2
    S = (A * A - BiSeries([[0], [0], [4 * (d - 1)]], n)).sqrt()
    denom = (d - 2) * A + d * S
    numer = (2 * (d - 1)) * (BiSeries([[1]], n) - BiSeries([[0], [0], w2], n))
    return numer * denom.reciprocal()


def cactus_pipeline(spec: ProblemSpec, zeta, n) -> PipelineResult:
    """Run the three-stage circuit-undercount construction.

    Stage 1 discounts the tree's saturated circuits by zeta per step; stage 2
    inserts prime circuits at every vertex through the two insertion series
    (d-2)f/(d-(d-1)f) at marked and (d-f)/(d-(d-1)f) at unmarked positions;
    stage 3 re-saturates.  Returns every intermediate series; g3 undercounts
    the graph's circuit counts coefficient-wise.
    """
    d = spec.d
    if d < 3:
        raise DomainError("pipeline needs d >= 3")
    if isinstance(zeta, int):
        zeta = QQ(zeta)
    if not (0 < zeta <= 1):
        raise DomainError("zeta must lie in (0, 1]")
    numeric = isinstance(zeta, mpmath.mpf)

    h = tree_green(d, n)
    f = spec.f_series(n)
    if numeric:
        h = h.to_mpf()
        f = f.to_mpf()
    H = cogrowth_transform(h, d)
    g1 = H.scale_t(zeta)

    t = Series.t(n) if not numeric else Series.t(n).to_mpf()
    T = t * (d - f) * (d - (d - 1) * f).reciprocal()
    U = ((d - 2) * f) * (d - f).reciprocal()
    g2 = g1.substitute(T, U)

    rev = (Series.t(n) * Series([1, 0, d - 1], n).reciprocal()).revert()
    if numeric:
        rev = rev.to_mpf()
    g3 = h * g2.compose(rev)

    if numeric:
        eps = mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
        if abs(g3.coeffs[0] - 1) > eps:
            raise DomainError("pipeline postcondition failed: g3[0] != 1")
    else:
        if g3.coeffs[0] != 1:
            raise DomainError("pipeline postcondition failed: g3[0] != 1")
        if any(c < 0 for c in g2.coeffs) or any(c < 0 for c in g3.coeffs):
            raise DomainError("pipeline postcondition failed: negative coefficient")
    return PipelineResult(h=h, H=H, g1=g1, g2=g2, g3=g3, zeta_used=zeta)


def free_product_green(g1: Series, g2: Series, n=None) -> Series:
    """Green function of the free product of two rooted graphs.

    Combines the formal inverses of t*G1 and t*G2:
        (tG)^{-1} composed inverse satisfies 1/(tG)^-1 = 1/(tG1)^-1 + 1/(tG2)^-1 - 1/t,
    evaluated through series reversion.
    """
    if n is None:
        n = min(g1.trunc_order, g2.trunc_order)
    n = min(n, g1.trunc_order, g2.trunc_order)
    if g1.coeffs[0] != 1 or g2.coeffs[0] != 1:
        raise DomainError("Green functions must have constant term 1")
    r1 = g1.truncate(n).shift_up().revert().shift_down().reciprocal()
    r2 = g2.truncate(n).shift_up().revert().shift_down().reciprocal()
    s = r1 + r2 - 1
    tg_inv = s.reciprocal().shift_up()
    return tg_inv.revert().shift_down()
