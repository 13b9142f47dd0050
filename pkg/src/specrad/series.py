"""Truncated univariate and bivariate formal power series.

Coefficients are exact rationals (gmpy2.mpq when available, else
fractions.Fraction) or high-precision mpmath floats.  All arithmetic on two
series truncates to the minimum of their truncation orders.  Floats are
rejected: they silently lose exactness.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .errors import (
    NonSquareConstant,
    NonzeroInnerConstant,
    NotInvertible,
    TruncationMismatch,
    ZeroConstantTerm,
)

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    QQ = Fraction

_EXACT_TYPES = (int, Fraction, type(QQ(0)))


def is_exact(x) -> bool:
    return isinstance(x, _EXACT_TYPES)


def _exact_to_mpf(c):
    if isinstance(c, mpmath.mpf):
        return c
    if isinstance(c, int):
        return mpmath.mpf(c)
    return mpmath.mpf(c.numerator) / c.denominator


def _coerce(coeffs):
    """Normalize a coefficient list: ints become QQ, any mpf promotes everything."""
    numeric = any(isinstance(c, mpmath.mpf) for c in coeffs)
    out = []
    for c in coeffs:
        if isinstance(c, float):
            raise TypeError("float coefficients are not supported; use Fraction/mpq or mpmath.mpf")
        if numeric:
            out.append(_exact_to_mpf(c))
        elif isinstance(c, int):
            out.append(QQ(c))
        elif is_exact(c):
            out.append(c)
        else:
            raise TypeError(f"unsupported coefficient type {type(c)!r}")
    return out


# raw list helpers ----------------------------------------------------------

def _ladd(a, b, n):
    out = list(a[:n + 1]) + [a[0] * 0] * (n + 1 - len(a))
    for i in range(min(len(b), n + 1)):
        out[i] = out[i] + b[i]
    return out


def _lmul(a, b, n):
    zero = a[0] * 0
    out = [zero] * (n + 1)
    for i in range(min(len(a), n + 1)):
        ai = a[i]
        if not ai:
            continue
        for j in range(min(len(b), n + 1 - i)):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def _lrecip(a, n):
    if not a[0]:
        raise ZeroConstantTerm("reciprocal of a series with zero constant term")
    inv0 = 1 / a[0] if not isinstance(a[0], int) else QQ(1, a[0])
    out = [inv0] + [inv0 * 0] * n
    for k in range(1, n + 1):
        s = out[0] * 0
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                s = s + a[j] * out[k - j]
        out[k] = -s * inv0
    return out


def _lcompose(outer, inner, n):
    zero = inner[0] * 0 if inner else outer[0] * 0
    res = [zero] * (n + 1)
    for c in reversed(outer[:n + 1]):
        res = _lmul(res, inner, n)
        res[0] = res[0] + c
    return res


def _lderiv(a):
    return [i * a[i] for i in range(1, len(a))]


class Series:
    """A power series truncated at order ``trunc_order`` (inclusive)."""

    __slots__ = ("coeffs", "trunc_order")

    def __init__(self, coeffs, trunc_order=None):
        coeffs = _coerce(list(coeffs))
        if trunc_order is None:
            if not coeffs:
                raise ValueError("empty coefficient list needs an explicit trunc_order")
            trunc_order = len(coeffs) - 1
        if trunc_order < 0:
            raise ValueError("trunc_order must be >= 0")
        zero = coeffs[0] * 0 if coeffs else QQ(0)
        coeffs = coeffs[:trunc_order + 1] + [zero] * (trunc_order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.trunc_order = trunc_order

    # constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls([0], n)

    @classmethod
    def one(cls, n):
        return cls([1], n)

    @classmethod
    def t(cls, n):
        return cls([0, 1], n)

    @classmethod
    def monomial(cls, c, k, n):
        coeffs = [0] * (k + 1)
        coeffs[k] = c
        return cls(coeffs, n)

    # basics ----------------------------------------------------------------

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.trunc_order == other.trunc_order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.trunc_order, tuple(map(str, self.coeffs))))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.trunc_order > 5 else ""
        return f"Series([{head}{tail}], N={self.trunc_order})"

    def is_exact(self):
        return not self.coeffs or not isinstance(self.coeffs[0], mpmath.mpf)

    def truncate(self, n):
        if n > self.trunc_order:
            raise ValueError("cannot extend a truncated series")
        return Series(self.coeffs[:n + 1], n)

    def to_mpf(self):
        return Series([_exact_to_mpf(c) for c in self.coeffs], self.trunc_order)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    # ring operations --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Series):
            n = min(self.trunc_order, other.trunc_order)
            return Series(_ladd(self.coeffs, other.coeffs, n), n)
        return Series([self.coeffs[0] + other] + self.coeffs[1:], self.trunc_order)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.trunc_order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            n = min(self.trunc_order, other.trunc_order)
            return Series(_lmul(self.coeffs, other.coeffs, n), n)
        if isinstance(other, float):
            raise TypeError("float scalar; use Fraction/mpq or mpmath.mpf")
        return Series([c * other for c in self.coeffs], self.trunc_order)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Series):
            return self * scalar.reciprocal()
        if isinstance(scalar, int):
            scalar = QQ(scalar)
        return Series([c / scalar for c in self.coeffs], self.trunc_order)

    def shift_up(self, k=1):
        """Multiply by t**k; coefficients stay exactly known, order grows by k."""
        return Series([self.coeffs[0] * 0] * k + self.coeffs, self.trunc_order + k)

    def shift_down(self, k=1):
        """Divide by t**k; requires valuation >= k, order shrinks by k."""
        if any(self.coeffs[i] for i in range(min(k, len(self.coeffs)))):
            raise NotInvertible("valuation too small for shift_down")
        if self.trunc_order < k:
            raise ValueError("trunc_order too small for shift_down")
        return Series(self.coeffs[k:], self.trunc_order - k)

    def derivative(self):
        if self.trunc_order == 0:
            return Series([self.coeffs[0] * 0], 0)
        return Series(_lderiv(self.coeffs), self.trunc_order - 1)

    # the operations of the kernel contract ----------------------------------

    def reciprocal(self):
        return Series(_lrecip(self.coeffs, self.trunc_order), self.trunc_order)

    def compose(self, inner):
        if inner.coeffs[0]:
            raise NonzeroInnerConstant("inner series must vanish at 0")
        n = min(self.trunc_order, inner.trunc_order)
        return Series(_lcompose(self.coeffs, inner.coeffs, n), n)

    def sqrt(self):
        """Square root with nonnegative constant term, by Newton iteration."""
        a0 = self.coeffs[0]
        y0 = _sqrt_constant(a0)
        n = self.trunc_order
        y = [y0]
        order = 0
        while order < n:
            order = min(2 * order + 1, n)
            ycur = y[:order + 1] + [y0 * 0] * (order + 1 - len(y))
            recip = _lrecip(ycur, order)
            ay = _lmul(self.coeffs, recip, order)
            y = [(ycur[i] + ay[i]) / 2 for i in range(order + 1)]
        return Series(y, n)

    def revert(self):
        """Formal inverse under composition, by Newton order-doubling."""
        if self.coeffs[0] or not self.coeffs[1]:
            raise NotInvertible("reversion needs a[0] = 0 and a[1] != 0")
        n = self.trunc_order
        a1 = self.coeffs[1]
        inv1 = 1 / a1 if not isinstance(a1, int) else QQ(1, a1)
        e = [a1 * 0, inv1]
        order = 1
        da = _lderiv(self.coeffs)
        while order < n:
            order = min(2 * order, n)
            ecur = e[:order + 1] + [a1 * 0] * (order + 1 - len(e))
            fe = _lcompose(self.coeffs, ecur, order)
            fe[1] = fe[1] - 1
            dfe = _lcompose(da, ecur, order)
            corr = _lmul(fe, _lrecip(dfe, order), order)
            e = [ecur[i] - corr[i] for i in range(order + 1)]
        return Series(e, n)

    def dominates(self, other):
        """Coefficient-wise a_n >= b_n for all n up to the common truncation."""
        if not isinstance(other, Series):
            raise TypeError("dominates compares two Series")
        if self.trunc_order != other.trunc_order:
            raise TruncationMismatch(
                f"orders differ: {self.trunc_order} vs {other.trunc_order}")
        return all(a >= b for a, b in zip(self.coeffs, other.coeffs))

    # serialization -----------------------------------------------------------

    def to_csv(self):
        if not self.is_exact():
            raise TypeError("CSV serialization is defined for exact series only")
        lines = ["n,numerator,denominator"]
        for n, c in enumerate(self.coeffs):
            lines.append(f"{n},{c.numerator},{c.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text):
        coeffs = []
        for line in text.strip().splitlines():
            if line.startswith("n,"):
                continue
            n, num, den = line.split(",")
            coeffs.append(QQ(int(num), int(den)))
        return cls(coeffs)

    def to_json_coeffs(self):
        if not self.is_exact():
            raise TypeError("p/q serialization is defined for exact series only")
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json_coeffs(cls, items):
        coeffs = []
        for s in items:
            num, _, den = s.partition("/")
            coeffs.append(QQ(int(num), int(den or "1")))
        return cls(coeffs)


def _sqrt_constant(a0):
    if isinstance(a0, mpmath.mpf):
        if a0 <= 0:
            raise NonSquareConstant("constant term must be positive")
        return mpmath.sqrt(a0)
    num, den = a0.numerator, a0.denominator
    if num < 0:
        raise NonSquareConstant("constant term is negative")
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise NonSquareConstant(f"{a0} is not the square of a rational")
    return QQ(rn, rd)


# bivariate series -----------------------------------------------------------

class BiSeries:
    """Series in t whose t^n coefficient is a polynomial in u of degree <= n.

    Polynomials are stored dense by degree.  The degree bound is an invariant
    of every operation (the n-th coefficient counts objects of size n with at
    most n marks).
    """

    __slots__ = ("coeffs", "trunc_order")

    def __init__(self, coeffs, trunc_order=None):
        coeffs = [list(_coerce(list(p) or [0])) for p in coeffs]
        if trunc_order is None:
            trunc_order = len(coeffs) - 1
        zero_poly = [coeffs[0][0] * 0] if coeffs else [QQ(0)]
        coeffs = coeffs[:trunc_order + 1] + [list(zero_poly) for _ in
                                             range(trunc_order + 1 - len(coeffs))]
        for n, p in enumerate(coeffs):
            while len(p) > 1 and not p[-1]:
                p.pop()
            if len(p) - 1 > n:
                raise ValueError(f"degree bound violated at t^{n}: deg={len(p) - 1}")
        self.coeffs = coeffs
        self.trunc_order = trunc_order

    @classmethod
    def from_series(cls, s: Series):
        return cls([[c] for c in s.coeffs], s.trunc_order)

    def coefficient(self, n, s):
        p = self.coeffs[n]
        return p[s] if s < len(p) else p[0] * 0

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        if self.trunc_order != other.trunc_order:
            return False
        for n in range(self.trunc_order + 1):
            for s in range(n + 1):
                if self.coefficient(n, s) != other.coefficient(n, s):
                    return False
        return True

    def __repr__(self):
        return f"BiSeries(N={self.trunc_order})"

    def validate_degree_bound(self):
        for n, p in enumerate(self.coeffs):
            if len(p) - 1 > n and any(p[n + 1:]):
                return False
        return True

    def __add__(self, other):
        if isinstance(other, BiSeries):
            n = min(self.trunc_order, other.trunc_order)
            return BiSeries([_padd(self.coeffs[i], other.coeffs[i])
                             for i in range(n + 1)], n)
        out = [list(p) for p in self.coeffs]
        out[0] = _padd(out[0], [other])
        return BiSeries(out, self.trunc_order)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries([[-c for c in p] for p in self.coeffs], self.trunc_order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiSeries):
            n = min(self.trunc_order, other.trunc_order)
            zero = self.coeffs[0][0] * 0
            out = [[zero] for _ in range(n + 1)]
            for i in range(n + 1):
                pi = self.coeffs[i]
                if len(pi) == 1 and not pi[0]:
                    continue
                for j in range(n + 1 - i):
                    pj = other.coeffs[j]
                    if len(pj) == 1 and not pj[0]:
                        continue
                    out[i + j] = _padd(out[i + j], _pmul(pi, pj))
            return BiSeries(out, n)
        if isinstance(other, Series):
            return self * BiSeries.from_series(other)
        if isinstance(other, float):
            raise TypeError("float scalar; use Fraction/mpq or mpmath.mpf")
        return BiSeries([[c * other for c in p] for p in self.coeffs],
                        self.trunc_order)

    __rmul__ = __mul__

    def reciprocal(self):
        b0 = self.coeffs[0][0]
        if not b0:
            raise ZeroConstantTerm("reciprocal of a BiSeries with zero constant term")
        inv0 = 1 / b0 if not isinstance(b0, int) else QQ(1, b0)
        n = self.trunc_order
        out = [[inv0]] + [[inv0 * 0] for _ in range(n)]
        for k in range(1, n + 1):
            acc = [inv0 * 0]
            for j in range(1, k + 1):
                pj = self.coeffs[j]
                if len(pj) == 1 and not pj[0]:
                    continue
                acc = _padd(acc, _pmul(pj, out[k - j]))
            out[k] = [-c * inv0 for c in acc]
        return BiSeries(out, n)

    def sqrt(self):
        b0 = _sqrt_constant(self.coeffs[0][0])
        n = self.trunc_order
        out = [[b0]] + [[b0 * 0] for _ in range(n)]
        half = QQ(1, 2) if not isinstance(b0, mpmath.mpf) else mpmath.mpf("0.5")
        inv2b0 = half / b0
        for k in range(1, n + 1):
            acc = list(self.coeffs[k])
            for j in range(1, k):
                acc = _psub(acc, _pmul(out[j], out[k - j]))
            out[k] = [c * inv2b0 for c in acc]
        return BiSeries(out, n)

    def scale_t(self, z):
        """Substitute t -> z*t: the n-th coefficient is scaled by z**n."""
        out, zn = [], None
        for n, p in enumerate(self.coeffs):
            zn = (zn * z) if n else (z * 0 + 1)
            out.append([c * zn for c in p])
        return BiSeries(out, self.trunc_order)

    def specialize_u(self, value):
        """Evaluate the u-polynomials at a scalar, yielding a Series in t."""
        out = []
        for p in self.coeffs:
            acc = p[-1]
            for c in reversed(p[:-1]):
                acc = acc * value + c
            out.append(acc)
        return Series(out, self.trunc_order)

    def substitute(self, t_sub: Series, u_sub: Series) -> Series:
        """Substitute series for both variables; t_sub must vanish at 0."""
        if t_sub.coeffs[0]:
            raise NonzeroInnerConstant("t substitution must vanish at 0")
        n = min(self.trunc_order, t_sub.trunc_order, u_sub.trunc_order)
        zero = t_sub.coeffs[0] * 0
        tpow = [[zero * 0 + 1]]
        for _ in range(n):
            tpow.append(_lmul(tpow[-1], t_sub.coeffs, n))
        max_deg = max(len(p) - 1 for p in self.coeffs[:n + 1])
        upow = [[zero * 0 + 1]]
        for _ in range(max_deg):
            upow.append(_lmul(upow[-1], u_sub.coeffs, n))
        acc = [zero] * (n + 1)
        for k, p in enumerate(self.coeffs[:n + 1]):
            # evaluate p at u_sub, truncated at n-k since t_sub**k has valuation k
            pn = [zero] * (n - k + 1)
            for j, c in enumerate(p):
                if not c:
                    continue
                uj = upow[j]
                for i in range(min(len(uj), n - k + 1)):
                    if uj[i]:
                        pn[i] = pn[i] + c * uj[i]
            term = _lmul(pn, tpow[k], n)
            acc = _ladd(acc, term, n)
        return Series(acc, n)

    def to_table(self):
        """Triangular table of coefficients: table[n][s] for s <= n."""
        return [[self.coefficient(n, s) for s in range(n + 1)]
                for n in range(self.trunc_order + 1)]


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return out


def _psub(a, b):
    return _padd(a, [-c for c in b])


def _pmul(a, b):
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


# module-level operation names matching the kernel contract -------------------

def add(a: Series, b: Series) -> Series:
    return a + b


def mul(a: Series, b: Series) -> Series:
    return a * b


def reciprocal(a: Series) -> Series:
    return a.reciprocal()


def compose(outer: Series, inner: Series) -> Series:
    return outer.compose(inner)


def sqrt(a: Series) -> Series:
    return a.sqrt()


def revert(a: Series) -> Series:
    return a.revert()


def dominates(a: Series, b: Series) -> bool:
    return a.dominates(b)


def bi_substitute(b: BiSeries, t_sub: Series, u_sub: Series) -> Series:
    return b.substitute(t_sub, u_sub)
