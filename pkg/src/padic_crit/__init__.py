"""Exact p-adic valuations, Newton polygons, critical-value spectra, Berkovich
path profiles and cycle multipliers for rational maps over Q."""

from .valuation import (
    INFINITY,
    HypothesisFlags,
    PadicContext,
    PreconditionError,
    Thresholds,
    gamma_valuation,
    hat_lambda_exponent,
    hypothesis_thresholds,
    lambda_exponent,
    thresholds,
    val,
)
from .poly import Poly, poly_gcd, resultant
from .ratmap import (
    CapExceeded,
    DegenerateIterate,
    RatMap,
    compose,
    derivative,
    derivative_at,
    eval_map,
    iterate,
    normalize,
    oo,
    ratmap,
    reduce_mod_p,
    resultant_in_Y,
    wronskian,
)
from .newton import (
    NewtonPolygon,
    ValSpectrum,
    build,
    count_zeros_in_disk,
    disk_degree,
    pole_distance,
    r_bullet_distance,
    root_valuations,
    series_expand,
    univalence_certificate,
)
from .berkovich import (
    InvariantViolation,
    PLFunction,
    G_profile,
    hypothesis_check,
    log_norm_profile,
    partial_G,
    wf_profile,
)
from .critical import (
    BoundCertificate,
    critical_distance_spectrum,
    escape_certificate,
    verify_corollary_E,
    verify_corollary_F,
    verify_theorem_C,
    verify_theorem_D,
)
from .cycles import (
    CycleGroupingError,
    attracting_report,
    exact_period_factor,
    multiplier_spectrum,
    periodic_polynomial,
    power_map_cycles,
)
from .families import make, make_P0, make_Q0, make_Q1, make_Q2, verify_sharpness

__all__ = [
    "INFINITY",
    "HypothesisFlags",
    "PadicContext",
    "PreconditionError",
    "Thresholds",
    "gamma_valuation",
    "hat_lambda_exponent",
    "hypothesis_thresholds",
    "lambda_exponent",
    "thresholds",
    "val",
    "Poly",
    "poly_gcd",
    "resultant",
    "CapExceeded",
    "DegenerateIterate",
    "RatMap",
    "compose",
    "derivative",
    "derivative_at",
    "eval_map",
    "iterate",
    "normalize",
    "oo",
    "ratmap",
    "reduce_mod_p",
    "resultant_in_Y",
    "wronskian",
    "NewtonPolygon",
    "ValSpectrum",
    "build",
    "count_zeros_in_disk",
    "disk_degree",
    "pole_distance",
    "r_bullet_distance",
    "root_valuations",
    "series_expand",
    "univalence_certificate",
    "InvariantViolation",
    "PLFunction",
    "G_profile",
    "hypothesis_check",
    "log_norm_profile",
    "partial_G",
    "wf_profile",
    "BoundCertificate",
    "critical_distance_spectrum",
    "escape_certificate",
    "verify_corollary_E",
    "verify_corollary_F",
    "verify_theorem_C",
    "verify_theorem_D",
    "CycleGroupingError",
    "attracting_report",
    "exact_period_factor",
    "multiplier_spectrum",
    "periodic_polynomial",
    "power_map_cycles",
    "make",
    "make_P0",
    "make_Q0",
    "make_Q1",
    "make_Q2",
    "verify_sharpness",
]

__version__ = "0.1.0"
