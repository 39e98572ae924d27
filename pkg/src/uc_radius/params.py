"""
Parameter types identifying one member of each function family, and the
normalization selector shared by both families
"""

import warnings
from dataclasses import dataclass
from enum import Enum

from .config import Q_SOFT_LIMIT
from .exceptions import DomainError, SlowConvergenceWarning


class Kind(int, Enum):
    """
    Jackson's second (2) or third / Hahn-Exton (3) q-Bessel function
    """

    JACKSON2 = 2
    JACKSON3 = 3


class Norm(str, Enum):
    """
    The three normalizations that put a family member into class A
    """

    F = "f"
    G = "g"
    H = "h"


@dataclass(frozen=True)
class QBesselParams:
    """
    Identifies one q-Bessel function J_nu^(s)(.; q)
    """

    kind: Kind
    "which of Jackson's q-Bessel functions"
    nu: float
    "the order, nu > -1"
    q: float
    "the deformation parameter, 0 < q < 1"

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "nu", float(self.nu))
        object.__setattr__(self, "q", float(self.q))
        if not self.nu > -1:
            raise DomainError(
                f"q-Bessel order requires nu > -1, got {self.nu}"
            )
        if not 0 < self.q < 1:
            raise DomainError(f"q-Bessel requires 0 < q < 1, got {self.q}")
        if self.q > Q_SOFT_LIMIT:
            warnings.warn(
                f"q = {self.q} exceeds {Q_SOFT_LIMIT}; "
                "infinite q-products converge slowly",
                SlowConvergenceWarning,
                stacklevel=3,
            )

    def descriptor(self) -> dict:
        return {
            "family": "qbessel",
            "kind": int(self.kind),
            "nu": self.nu,
            "q": self.q,
        }


@dataclass(frozen=True)
class WrightParams:
    """
    Identifies one Wright function phi(rho, beta, .)
    """

    rho: float
    "rho > -1 for evaluation, rho > 0 for radius work"
    beta: float
    "beta > 0 for radius work"

    def __post_init__(self):
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "beta", float(self.beta))
        if not self.rho > -1:
            raise DomainError(
                f"Wright function requires rho > -1, got {self.rho}"
            )

    def require_radius_domain(self):
        """
        Raises DomainError unless rho > 0 and beta > 0
        """
        if not (self.rho > 0 and self.beta > 0):
            raise DomainError(
                "radius computations require rho > 0 and beta > 0, got "
                f"rho={self.rho}, beta={self.beta}"
            )

    def descriptor(self) -> dict:
        return {"family": "wright", "rho": self.rho, "beta": self.beta}


@dataclass(frozen=True)
class BesselParams:
    """
    Identifies the classical Bessel function J_nu, used for calibration
    """

    nu: float

    def __post_init__(self):
        object.__setattr__(self, "nu", float(self.nu))
        if not self.nu > -1:
            raise DomainError(f"Bessel order requires nu > -1, got {self.nu}")

    def descriptor(self) -> dict:
        return {"family": "bessel", "nu": self.nu}


def params_from_descriptor(descriptor: dict):
    """
    Rebuilds parameters from the dict made by descriptor()
    """
    family = descriptor["family"]
    if family == "qbessel":
        return QBesselParams(
            Kind(descriptor["kind"]), descriptor["nu"], descriptor["q"]
        )
    if family == "wright":
        return WrightParams(descriptor["rho"], descriptor["beta"])
    if family == "bessel":
        return BesselParams(descriptor["nu"])
    raise ValueError(f"unknown family {family!r}")
