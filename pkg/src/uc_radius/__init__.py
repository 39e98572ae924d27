"""
Radii of uniform convexity for normalized q-Bessel and Wright functions
"""

try:
    from ._version import version as __version__
except ImportError:
    __version__ = "unknown"

from .config import NumericsConfig
from .exceptions import DomainError, NumericalError
from .oracle import oracle_radius, uc_margin
from .params import BesselParams, Kind, Norm, QBesselParams, WrightParams
from .radius import (
    Method,
    RadiusResult,
    UCTarget,
    dual_route,
    radius_uc_qbessel_f,
    radius_uc_qbessel_g,
    radius_uc_qbessel_h,
    radius_uc_wright_f,
    radius_uc_wright_g,
    radius_uc_wright_h,
)
from .zeros import ZeroKind, ZeroTable, ZeroTarget, scan_and_refine

__all__ = (
    "BesselParams",
    "DomainError",
    "Kind",
    "Method",
    "Norm",
    "NumericalError",
    "NumericsConfig",
    "QBesselParams",
    "RadiusResult",
    "UCTarget",
    "WrightParams",
    "ZeroKind",
    "ZeroTable",
    "ZeroTarget",
    "dual_route",
    "oracle_radius",
    "radius_uc_qbessel_f",
    "radius_uc_qbessel_g",
    "radius_uc_qbessel_h",
    "radius_uc_wright_f",
    "radius_uc_wright_g",
    "radius_uc_wright_h",
    "scan_and_refine",
    "uc_margin",
)
