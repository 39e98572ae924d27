"""
Contains code for specifying numerical settings: tolerances, term limits,
scan geometry and the zero table cache location
"""

import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

CACHE_ENV_VAR = "UC_RADIUS_CACHE"

DEFAULT_SERIES_RTOL = 1e-15
DEFAULT_MAX_TERMS = 500
Q_SOFT_LIMIT = 0.99
DEFAULT_SCAN_GROWTH = 1.05
DEFAULT_SCAN_UPPER_FACTOR = 64.0
DEFAULT_SCAN_EXTENSIONS = 24
DEFAULT_ZERO_TOL = 1e-13
DEFAULT_ZERO_COUNT = 30
DEFAULT_MAX_ZERO_COUNT = 240
DEFAULT_RAYLEIGH_TERMS = 3
DEFAULT_ROOT_RTOL = 1e-12
DEFAULT_TAIL_TOL = 1e-10
DEFAULT_EDGE_FRACTION = 1e-9
DEFAULT_POLE_GUARD = 1e-6
DEFAULT_ORACLE_SAMPLES = 512
DEFAULT_ORACLE_REFINE_SAMPLES = 64
DEFAULT_ORACLE_TOL = 1e-9
DEFAULT_MARGIN_ZERO = 1e-10
DEFAULT_ORACLE_DOMAIN_FRACTION = 0.999
DEFAULT_ORACLE_SCAN_TOL = 1e-8
DEFAULT_DENOMINATOR_FLOOR = 1e-14
MIN_ORACLE_SAMPLES = 64


def default_cache_dir() -> Path:
    """
    The cache directory from the environment, or the per-user default
    """
    from_env = os.environ.get(CACHE_ENV_VAR)
    if from_env:
        return Path(from_env)
    return Path.home() / ".cache" / "uc-radius"


@dataclass(frozen=True)
class NumericsConfig:  # pylint: disable=too-many-instance-attributes
    """
    Data type for specifying numerical settings. None means use the default
    """

    series_rtol: Optional[float] = None
    "relative size of the last kept term at which a series is truncated"
    max_terms: Optional[int] = None
    "the most terms any double precision series may use"
    scan_growth: Optional[float] = None
    "multiplicative step of the zero scanner"
    scan_upper_factor: Optional[float] = None
    "initial scan bound as a multiple of the first zero estimate"
    scan_extensions: Optional[int] = None
    "how many times the scan bound may grow eightfold"
    zero_tol: Optional[float] = None
    "relative bracket width at which bisection of a zero stops"
    zero_count: Optional[int] = None
    "zeros used by the zero sum route before escalation"
    max_zero_count: Optional[int] = None
    "the most zeros the zero sum route may escalate to"
    rayleigh_terms: Optional[int] = None
    "number of tail moments used to correct a truncated zero sum"
    root_rtol: Optional[float] = None
    "relative tolerance of radius roots"
    tail_tol: Optional[float] = None
    "the zero sum tail bound must fall below a tenth of this"
    edge_fraction: Optional[float] = None
    "left end of the radius bracket as a fraction of the domain"
    pole_guard: Optional[float] = None
    "right end of the radius bracket is (1 - pole_guard) * domain"
    oracle_samples: Optional[int] = None
    "angles sampled on each circle by the oracle"
    oracle_refine_samples: Optional[int] = None
    "extra angles sampled around the positive real axis"
    oracle_tol: Optional[float] = None
    "absolute tolerance on r for the oracle bisection"
    margin_zero: Optional[float] = None
    "margins smaller than this in magnitude count as zero"
    oracle_domain_fraction: Optional[float] = None
    "fraction of the first critical zero the oracle searches up to"
    oracle_scan_tol: Optional[float] = None
    "zero tolerance of the coarse scan that bounds the oracle search"
    denominator_floor: Optional[float] = None
    "ratios with a denominator below this raise CriticalPointError"
    cache_dir: Optional[str] = None
    "where zero tables are cached"


@dataclass(frozen=True)
class ResolvedConfig:  # pylint: disable=too-many-instance-attributes
    """
    NumericsConfig with every default filled in
    """

    series_rtol: float
    max_terms: int
    scan_growth: float
    scan_upper_factor: float
    scan_extensions: int
    zero_tol: float
    zero_count: int
    max_zero_count: int
    rayleigh_terms: int
    root_rtol: float
    tail_tol: float
    edge_fraction: float
    pole_guard: float
    oracle_samples: int
    oracle_refine_samples: int
    oracle_tol: float
    margin_zero: float
    oracle_domain_fraction: float
    oracle_scan_tol: float
    denominator_floor: float
    cache_dir: Path


DEFAULTS = {
    "series_rtol": DEFAULT_SERIES_RTOL,
    "max_terms": DEFAULT_MAX_TERMS,
    "scan_growth": DEFAULT_SCAN_GROWTH,
    "scan_upper_factor": DEFAULT_SCAN_UPPER_FACTOR,
    "scan_extensions": DEFAULT_SCAN_EXTENSIONS,
    "zero_tol": DEFAULT_ZERO_TOL,
    "zero_count": DEFAULT_ZERO_COUNT,
    "max_zero_count": DEFAULT_MAX_ZERO_COUNT,
    "rayleigh_terms": DEFAULT_RAYLEIGH_TERMS,
    "root_rtol": DEFAULT_ROOT_RTOL,
    "tail_tol": DEFAULT_TAIL_TOL,
    "edge_fraction": DEFAULT_EDGE_FRACTION,
    "pole_guard": DEFAULT_POLE_GUARD,
    "oracle_samples": DEFAULT_ORACLE_SAMPLES,
    "oracle_refine_samples": DEFAULT_ORACLE_REFINE_SAMPLES,
    "oracle_tol": DEFAULT_ORACLE_TOL,
    "margin_zero": DEFAULT_MARGIN_ZERO,
    "oracle_domain_fraction": DEFAULT_ORACLE_DOMAIN_FRACTION,
    "oracle_scan_tol": DEFAULT_ORACLE_SCAN_TOL,
    "denominator_floor": DEFAULT_DENOMINATOR_FLOOR,
}


def resolve_config(config: Optional[NumericsConfig] = None) -> ResolvedConfig:
    """
    Applies defaults to a NumericsConfig and checks the result makes sense
    """
    if config is None:
        config = NumericsConfig()
    values = {}
    for field in fields(NumericsConfig):
        if field.name == "cache_dir":
            continue
        requested = getattr(config, field.name)
        values[field.name] = (
            DEFAULTS[field.name] if requested is None else requested
        )
    cache_dir = (
        default_cache_dir()
        if config.cache_dir is None
        else Path(config.cache_dir)
    )
    # every tolerance and count must be positive
    for name, value in values.items():
        if name == "rayleigh_terms":
            continue
        if value <= 0:
            raise ValueError(f"{name} must be positive, got {value}")
    if values["rayleigh_terms"] < 0:
        raise ValueError("rayleigh_terms cannot be negative")
    if values["scan_growth"] <= 1:
        raise ValueError("scan_growth must exceed 1")
    if values["oracle_samples"] < MIN_ORACLE_SAMPLES:
        raise ValueError(
            f"oracle_samples must be at least {MIN_ORACLE_SAMPLES}"
        )
    if values["zero_count"] > values["max_zero_count"]:
        raise ValueError("zero_count cannot exceed max_zero_count")
    if not 0 < values["oracle_domain_fraction"] < 1:
        raise ValueError("oracle_domain_fraction must lie in (0, 1)")
    return ResolvedConfig(cache_dir=cache_dir, **values)
