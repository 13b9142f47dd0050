"""Assemble every applicable spectral-radius bound into one report, and run
the end-to-end check that the undercount series really minorizes the exact
circuit counts of the target graph.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import mpmath
from mpmath import mp, mpf

from .errors import SpecradError
from .graphs import build_tessellation_ball, build_tree_ball, count_closed_walks
from .series import QQ
from .solvers import (
    DEFAULT_PRECISION,
    PaschkeResult,
    RadiusResult,
    ZetaResult,
    isoperimetric_bounds,
    kesten_bound,
    paschke_bound,
    radius_of_convergence,
    solve_zeta_generic,
    solve_zeta_surface,
    surface_simple_bounds,
)
from .transforms import ProblemSpec, cactus_pipeline

# upper bounds from the literature, stored for context only (not computed here)
REFERENCE_UPPER = {
    (8, 8): ("0.662816", "cone-type upper bound (T. Nagnibeda); cited constant, not computed"),
    (12, 12): ("0.552792", "cone-type upper bound (T. Nagnibeda); cited constant, not computed"),
}


@dataclass
class BoundReport:
    spec: ProblemSpec
    genus: Optional[int]
    k: Optional[int]
    trunc_order: int
    precision: int
    kesten: object
    paschke: Optional[PaschkeResult]
    cactus_zeta: Optional[ZetaResult]
    cactus_radius: Optional[RadiusResult]
    simple_surface: Optional[tuple]
    isoperimetric: Optional[tuple]
    reference_upper: Optional[tuple]
    failures: dict

    @property
    def cactus_bound(self):
        return self.cactus_radius.bound if self.cactus_radius else None

    @property
    def best_lower(self):
        cands = [self.kesten]
        if self.paschke:
            cands.append(self.paschke.value)
        if self.cactus_radius:
            cands.append(self.cactus_radius.bound)
        if self.simple_surface:
            cands.append(self.simple_surface[0])
        if self.isoperimetric:
            cands.append(self.isoperimetric[1])
        return max(cands)

    def to_json_dict(self):
        p = self.precision

        def s(x):
            return mpmath.nstr(x, p) if x is not None else None

        fs = self.spec.f_spec
        spec_json = {
            "d": self.spec.d,
            "eta": f"{self.spec.eta.numerator}/{self.spec.eta.denominator}",
            "f": ({"monomial": {"count": fs.count, "length": fs.length}}
                  if hasattr(fs, "length") else {"coeffs": [str(c) for c in fs.coeffs]}),
        }
        out = {
            "spec": spec_json,
            "genus": self.genus,
            "options": {"N": self.trunc_order, "precision": p, "k": self.k},
            "kesten": s(self.kesten),
            "paschke": self.paschke.to_json() if self.paschke else None,
            "cactus": None,
            "simple_surface": None,
            "isoperimetric": None,
            "reference_upper": None,
            "best_lower": s(self.best_lower),
            "provenance": {
                "kesten": {"equation": "tree floor 2*sqrt(d-1)/d", "rounding": "nearest"},
            },
            "failures": self.failures,
        }
        if self.cactus_zeta and self.cactus_radius:
            out["cactus"] = {
                "zeta": mpmath.nstr(self.cactus_zeta.zeta, p),
                "alpha": s(self.cactus_radius.alpha),
                "rho": s(self.cactus_radius.rho),
                "lower_bound": s(self.cactus_radius.bound),
            }
            out["provenance"]["cactus.zeta"] = self.cactus_zeta.to_json() | {
                "rounding": "down"}
            out["provenance"]["cactus.rho"] = {"method": self.cactus_radius.method,
                                               "rounding": "up"}
            out["provenance"]["cactus.lower_bound"] = {"rounding": "down"}
        if self.paschke:
            out["provenance"]["paschke"] = {"equation": "cycle-cover minimum / d",
                                            "rounding": "nearest"}
        if self.simple_surface:
            out["simple_surface"] = {"lower": s(self.simple_surface[0]),
                                     "upper": s(self.simple_surface[1]),
                                     "upper_clamped_at_1": True}
        if self.isoperimetric:
            iota, lo, hi = self.isoperimetric
            out["isoperimetric"] = {"iota": s(iota), "mohar_lower": s(lo),
                                    "mohar_upper": s(hi)}
        if self.reference_upper:
            out["reference_upper"] = {"value": self.reference_upper[0],
                                      "source": self.reference_upper[1]}
        return out

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def table(self):
        rows = []
        d = self.spec.d
        m = self.spec.monomial_length
        head = f"spectral radius bounds: d={d}" + (f", m={m}" if m else ", tree (f=0)")
        if self.genus:
            head += f"  [genus {self.genus} surface]"
        rows.append(head)
        rows.append(f"  options: N={self.trunc_order} precision={self.precision} "
                    f"k={self.k} n_max=n/a")
        rows.append(f"  kesten lower        {mpmath.nstr(self.kesten, 12)}")
        if self.paschke:
            rows.append(f"  paschke lower       {mpmath.nstr(self.paschke.value, 12)}"
                        f"  (k={self.k})")
        if self.cactus_radius:
            rows.append(f"  cactus lower        {mpmath.nstr(self.cactus_radius.bound, 12)}"
                        f"  (zeta={mpmath.nstr(self.cactus_zeta.zeta, 12)},"
                        f" alpha={mpmath.nstr(self.cactus_radius.alpha, 9)},"
                        f" rho={mpmath.nstr(self.cactus_radius.rho, 9)})")
        if self.isoperimetric:
            iota, lo, hi = self.isoperimetric
            rows.append(f"  isoperimetric       [{mpmath.nstr(lo, 6)}, {mpmath.nstr(hi, 6)}]"
                        f"  (iota={mpmath.nstr(iota, 12)})")
        if self.simple_surface:
            rows.append(f"  simple surface      [{mpmath.nstr(self.simple_surface[0], 9)},"
                        f" {mpmath.nstr(self.simple_surface[1], 9)}]")
        rows.append(f"  best lower          {mpmath.nstr(self.best_lower, 12)}")
        if self.reference_upper:
            rows.append(f"  reference upper     {self.reference_upper[0]}"
                        f"  ({self.reference_upper[1]})")
        for name, msg in self.failures.items():
            rows.append(f"  [{name} unavailable: {msg}]")
        return "\n".join(rows) + "\n"


def compute_report(spec: ProblemSpec, genus=None, k=None, trunc_order=64,
                   precision=DEFAULT_PRECISION) -> BoundReport:
    """Compute every applicable bound.  Individual failures degrade to absent
    fields (recorded under ``failures``) rather than aborting the report."""
    with mp.workdps(precision + 15):
        failures = {}
        m = spec.monomial_length
        if k is None and m is not None and not spec.is_free:
            k = m

        kesten = kesten_bound(spec.d)

        paschke = None
        if k is not None:
            try:
                paschke = paschke_bound(spec.d, k, precision)
            except SpecradError as exc:
                failures["paschke"] = str(exc)

        cactus_zeta = cactus_radius = None
        try:
            if spec.is_free:
                cactus_zeta = ZetaResult(zeta=mpf(1), equation_id="generic",
                                         residual=mpf(0), bracket=(mpf(1), mpf(1)),
                                         precision=precision)
            elif m is not None:
                cactus_zeta = solve_zeta_surface(spec.d, m, precision)
            else:
                cactus_zeta = solve_zeta_generic(spec, precision)
            # run the series pipeline at the requested truncation; its
            # postconditions are the cross-check that the scalar radius
            # stage is talking about the same object
            zeta_for_pipeline = (QQ(1) if cactus_zeta.zeta == 1
                                 else cactus_zeta.zeta)
            cactus_pipeline(spec, zeta_for_pipeline, trunc_order)
            cactus_radius = radius_of_convergence(spec, cactus_zeta.zeta, precision)
        except SpecradError as exc:
            failures["cactus"] = str(exc)

        simple_surface = None
        if genus is not None:
            try:
                simple_surface = surface_simple_bounds(genus)
            except SpecradError as exc:
                failures["simple_surface"] = str(exc)

        isoperimetric = None
        if m is not None and (spec.d - 2) * (m - 2) >= 4:
            try:
                isoperimetric = isoperimetric_bounds(spec.d, m)
            except SpecradError as exc:
                failures["isoperimetric"] = str(exc)

        reference_upper = REFERENCE_UPPER.get((spec.d, m)) if m else None

        return BoundReport(spec=spec, genus=genus, k=k, trunc_order=trunc_order,
                           precision=precision, kesten=kesten, paschke=paschke,
                           cactus_zeta=cactus_zeta, cactus_radius=cactus_radius,
                           simple_surface=simple_surface,
                           isoperimetric=isoperimetric,
                           reference_upper=reference_upper, failures=failures)


@dataclass
class VerificationResult:
    n_max: int
    g3_coeffs: list          # decimal strings
    walk_counts: list        # exact integers
    dominance_holds: bool
    first_violation: Optional[int]
    g3_exact: list           # exact rationals (not serialized)

    def to_json_dict(self):
        return {
            "n_max": self.n_max,
            "g3_coeffs": self.g3_coeffs,
            "walk_counts": self.walk_counts,
            "dominance_holds": self.dominance_holds,
            "first_violation": self.first_violation,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def table(self):
        rows = [f"undercount verification up to n = {self.n_max}"]
        rows.append(f"  {'n':>3} {'walks':>16} {'g3[n]':>24}")
        for n, (c, g) in enumerate(zip(self.walk_counts, self.g3_coeffs)):
            rows.append(f"  {n:>3} {c:>16} {g:>24}")
        rows.append(f"  dominance holds: {self.dominance_holds}"
                    + (f" (first violation at n={self.first_violation})"
                       if self.first_violation is not None else ""))
        return "\n".join(rows) + "\n"


def verify_undercount(spec: ProblemSpec, n_max, precision=DEFAULT_PRECISION,
                      cap=None) -> VerificationResult:
    """Exact end-to-end check: closed-walk counts of the target ball must
    dominate the undercount coefficients, computed with the discount rounded
    down so the comparison is exact rationals against exact integers."""
    from .graphs import DEFAULT_VERTEX_CAP
    cap = cap or DEFAULT_VERTEX_CAP
    m = spec.monomial_length
    radius = max(1, math.ceil(n_max / 2))
    if spec.is_free:
        ball = build_tree_ball(spec.d, radius, cap)
    else:
        if m is None:
            raise SpecradError("verification needs a tessellation or tree spec")
        ball = build_tessellation_ball(spec.d, m, radius, cap)
    counts = count_closed_walks(ball, n_max).counts

    if spec.is_free:
        zeta_lo = QQ(1)
    else:
        zeta_lo = solve_zeta_surface(spec.d, m, precision).rational_lower()
    pipe = cactus_pipeline(spec, zeta_lo, max(n_max, 1))
    g3 = pipe.g3.coeffs[:n_max + 1]

    first_violation = None
    for n in range(n_max + 1):
        if QQ(counts[n]) < g3[n]:
            first_violation = n
            break
    with mp.workdps(precision + 10):
        g3_str = [mpmath.nstr(mpf(c.numerator) / c.denominator, precision)
                  for c in g3]
    return VerificationResult(n_max=n_max, g3_coeffs=g3_str,
                              walk_counts=[int(c) for c in counts],
                              dominance_holds=first_violation is None,
                              first_violation=first_violation,
                              g3_exact=list(g3))
