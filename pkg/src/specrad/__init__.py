"""Lower bounds on the spectral radius of vertex-transitive graphs.

The pipeline counts a tractable family of circuits in a graph exactly,
underestimating the full circuit generating function coefficient-by-
coefficient; the growth rate of the undercount is then a certified lower
bound on d * ||M||.  Brute-force graph oracles verify every step at desk
scale.
"""

from .errors import (
    DomainError,
    MinimizationFailed,
    NoRootInUnitInterval,
    NonSquareConstant,
    NonzeroInnerConstant,
    NotATessellation,
    NotInvertible,
    RadiusTooSmall,
    SizeLimit,
    SpecradError,
    TruncationMismatch,
    ZeroConstantTerm,
)
from .series import BiSeries, QQ, Series, bi_substitute, dominates
from .transforms import (
    Explicit,
    Monomial,
    PipelineResult,
    ProblemSpec,
    cactus_pipeline,
    cogrowth_transform,
    cycle_green,
    free_product_green,
    tree_green,
    tree_spiky_closed_form,
)
from .solvers import (
    PaschkeResult,
    RadiusResult,
    ZetaResult,
    isoperimetric_bounds,
    kesten_bound,
    paschke_bound,
    radius_of_convergence,
    solve_zeta_generic,
    solve_zeta_lll,
    solve_zeta_surface,
    surface_simple_bounds,
)
from .graphs import (
    GraphBall,
    WalkCounts,
    build_pkd_ball,
    build_tessellation_ball,
    build_tree_ball,
    count_avoiding_words,
    count_closed_walks,
    count_spiky_circuits,
    surface_forbidden_factors,
)
from .bounds import BoundReport, VerificationResult, compute_report, verify_undercount

__version__ = "0.1.0"

__all__ = [
    "BiSeries", "BoundReport", "DomainError", "Explicit", "GraphBall",
    "MinimizationFailed", "Monomial", "NoRootInUnitInterval",
    "NonSquareConstant", "NonzeroInnerConstant", "NotATessellation",
    "NotInvertible", "PaschkeResult", "PipelineResult", "ProblemSpec", "QQ",
    "RadiusResult", "RadiusTooSmall", "Series", "SizeLimit", "SpecradError",
    "TruncationMismatch", "VerificationResult", "WalkCounts", "ZeroConstantTerm",
    "ZetaResult", "bi_substitute", "build_pkd_ball", "build_tessellation_ball",
    "build_tree_ball", "cactus_pipeline", "cogrowth_transform",
    "compute_report", "count_avoiding_words", "count_closed_walks",
    "count_spiky_circuits", "cycle_green", "dominates", "free_product_green",
    "isoperimetric_bounds", "kesten_bound", "paschke_bound",
    "radius_of_convergence", "solve_zeta_generic", "solve_zeta_lll",
    "solve_zeta_surface", "surface_forbidden_factors", "surface_simple_bounds",
    "tree_green", "tree_spiky_closed_form", "verify_undercount",
]
