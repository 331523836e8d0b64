"""Exact spectra, counting bounds and denseness verdicts for power sums.

The package studies the sets of finite sums sum a_k q^k with digits a_k
drawn from {0, 1} or {-1, 0, 1} for an algebraic base q in (1, 2).  All
numerics are certified: algebraic numbers live in shrinking isolating
intervals or boxes, comparisons are exact or interval-separated, and the
decision rules only fire on certificates.
"""

from .attractor import (
    AttractorAnalysis,
    ConnectivityResult,
    analyze,
    attractor_to_json,
    connectivity,
    interior_criterion,
    rasterize,
    zn_lower_bound,
)
from .classify import NumberClass, classify
from .counting import (
    CountSeries,
    count_distinct,
    count_distinct_series,
    growth_ratio,
    power_count_identity,
    verify_inversion,
)
from .criteria import (
    CrosscheckReport,
    RuleRecord,
    Verdict,
    empirical_crosscheck,
    resolve_root,
    verdict,
    verdict_to_json,
)
from .errors import (
    EmptyTail,
    InvariantViolation,
    PrecisionExhausted,
    SpectraError,
    UsageError,
    WorkCapExceeded,
)
from .fixtures import FIXTURES, Fixture, FixtureResult, check_facts, run_all, run_fixture
from .heightsearch import (
    FilterCertificate,
    HeightOneResult,
    claim_sampler,
    find_height_one_multiple,
    height_one_analysis,
    three_root_filter,
)
from .intervals import Box, RatInterval
from .polyalg import IntPolynomial, certify_irreducible, graeffe, reverse
from .roots import AlgebraicNumber, all_roots, select_root
from .spectrum import (
    LAMBDA_DIGITS,
    PM_DIGITS,
    Y_DIGITS,
    DigitSet,
    GapStats,
    LambdaMinResult,
    SpectrumReport,
    enumerate_spectrum,
    gap_stats,
    gap_stats_to_json,
    pigeonhole_check,
    smallest_positive_lambda,
    spectrum_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber",
    "AttractorAnalysis",
    "Box",
    "ConnectivityResult",
    "CountSeries",
    "CrosscheckReport",
    "DigitSet",
    "EmptyTail",
    "FIXTURES",
    "FilterCertificate",
    "Fixture",
    "FixtureResult",
    "GapStats",
    "HeightOneResult",
    "IntPolynomial",
    "InvariantViolation",
    "LAMBDA_DIGITS",
    "LambdaMinResult",
    "NumberClass",
    "PM_DIGITS",
    "PrecisionExhausted",
    "RatInterval",
    "RuleRecord",
    "SpectraError",
    "SpectrumReport",
    "UsageError",
    "Verdict",
    "WorkCapExceeded",
    "Y_DIGITS",
    "all_roots",
    "analyze",
    "attractor_to_json",
    "certify_irreducible",
    "check_facts",
    "claim_sampler",
    "classify",
    "connectivity",
    "count_distinct",
    "count_distinct_series",
    "empirical_crosscheck",
    "enumerate_spectrum",
    "find_height_one_multiple",
    "gap_stats",
    "gap_stats_to_json",
    "graeffe",
    "growth_ratio",
    "height_one_analysis",
    "interior_criterion",
    "pigeonhole_check",
    "power_count_identity",
    "rasterize",
    "resolve_root",
    "reverse",
    "run_all",
    "run_fixture",
    "select_root",
    "smallest_positive_lambda",
    "spectrum_to_csv",
    "three_root_filter",
    "verdict",
    "verdict_to_json",
    "verify_inversion",
    "zn_lower_bound",
]
