"""
Radius of uniform convexity of the nine normalized functions

Each radius is the unique root of a strictly decreasing function on
(0, first critical zero) that starts at 1 and tends to -inf. The function
is 1 + 2 r f''(r) / f'(r) and is evaluated either from the series
(direct equations in J, J', J'' or Psi, Psi', Psi'') or from truncated sums
over zeros with a Rayleigh sum tail correction.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from .config import NumericsConfig, resolve_config
from .exceptions import BracketError, DomainError, NonConvergenceError
from .params import Kind, Norm, QBesselParams, WrightParams
from .qseries import jackson_qbessel, ratio_one_plus_zfpp_fp
from .wright import (
    normalized_wright,
    psi_func,
    ratio_one_plus_zfpp_fp_wright,
)
from .zeros import (
    ZeroKind,
    ZeroSource,
    ZeroTable,
    ZeroTarget,
    compute_source,
    rayleigh_sums,
)

logger = logging.getLogger(__name__)

COARSE_WIDTH = 1e-6

RadiusParams = Union[QBesselParams, WrightParams]


class Method(str, Enum):
    """
    How a radius was computed
    """

    DIRECT_EQ = "direct_eq"
    ZERO_SUM = "zero_sum"
    ORACLE = "oracle"


@dataclass(frozen=True)
class RadiusResult:  # pylint: disable=too-many-instance-attributes
    """
    A radius of uniform convexity and how well it is pinned down
    """

    radius: float
    bracket: Tuple[float, float]
    "sign change interval of the decreasing function"
    residual: float
    "value of the decreasing function (or oracle margin) at radius"
    iterations: int
    method: Method
    domain_upper: float
    "the first critical zero bounding the search"
    zero_count: int = 0
    "zeros per sum when method is zero_sum"
    tail_bound: float = 0.0
    "bound on the neglected zero sum tail"
    note: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "bracket": list(self.bracket),
            "residual": self.residual,
            "iterations": self.iterations,
            "method": self.method.value,
            "domain_upper": self.domain_upper,
            "zero_count": self.zero_count,
            "tail_bound": self.tail_bound,
            "note": self.note,
        }


@dataclass(frozen=True)
class UCTarget:
    """
    One of the nine normalized functions
    """

    params: RadiusParams
    norm: Norm

    def __post_init__(self):
        object.__setattr__(self, "norm", Norm(self.norm))
        if isinstance(self.params, QBesselParams):
            if self.norm is Norm.F and not self.params.nu > 0:
                raise DomainError(
                    "the f normalization radius requires nu > 0, got "
                    f"nu={self.params.nu}"
                )
        elif isinstance(self.params, WrightParams):
            self.params.require_radius_domain()
        else:
            raise DomainError(f"no radius for parameters {self.params!r}")

    @property
    def is_wright(self) -> bool:
        return isinstance(self.params, WrightParams)

    def descriptor(self) -> dict:
        out = dict(self.params.descriptor())
        out["norm"] = self.norm.value
        return out

    def ratio(self, z, config: Optional[NumericsConfig] = None):
        """
        1 + z f''(z) / f'(z)
        """
        if self.is_wright:
            return ratio_one_plus_zfpp_fp_wright(
                self.params, self.norm, z, config
            )
        return ratio_one_plus_zfpp_fp(self.params, self.norm, z, config)

    def critical_target(self) -> ZeroTarget:
        """
        The target whose first zero bounds the radius search
        """
        if self.is_wright:
            which = {
                Norm.F: ZeroKind.PSI_PRIME,
                Norm.G: ZeroKind.G_PRIME,
                Norm.H: ZeroKind.H_PRIME,
            }[self.norm]
        elif self.norm is Norm.F:
            which = ZeroKind.DERIVATIVE
        elif self.params.kind is Kind.JACKSON2:
            which = ZeroKind.ALPHA if self.norm is Norm.G else ZeroKind.BETA
        else:
            which = ZeroKind.GAMMA if self.norm is Norm.G else ZeroKind.DELTA
        return ZeroTarget(self.params, which)

    def domain_upper(self, critical: ZeroTable) -> float:
        """
        First critical zero in the variable of r: the pole value for h,
        the zero itself for f and g
        """
        if self.norm is Norm.H:
            return float(critical.pole_values()[0])
        return float(critical.zeros[0])

    def sum_terms(self) -> List[Tuple[ZeroTarget, float]]:
        """
        (target, weight) pairs with 1 + 2 r f''/f' = 1 + sum weight S

        S = sum_k w / (w_k - w), w = r for h and r^2 otherwise.
        """
        critical = self.critical_target()
        if self.norm is Norm.H:
            return [(critical, -2.0)]
        if self.norm is Norm.G:
            return [(critical, -4.0)]
        order = self.params.beta if self.is_wright else self.params.nu
        return [
            (critical, -4.0),
            (
                ZeroTarget(self.params, ZeroKind.FUNCTION),
                -4.0 * (1 / order - 1),
            ),
        ]

    def sum_variable(self, r: float) -> float:
        return r if self.norm is Norm.H else r * r

    def direct_function(
        self, config: Optional[NumericsConfig] = None
    ) -> Callable[[float], float]:
        """
        1 + 2 r f''(r) / f'(r) from series values at real r > 0
        """
        params = self.params
        if self.is_wright:
            if self.norm is Norm.F:
                beta = params.beta

                def func(r):
                    psi0, psi1, psi2 = (
                        psi_func(params, r, k, config).value
                        for k in range(3)
                    )
                    return (
                        1 + 2 * r * psi2 / psi1
                        + 2 * (1 / beta - 1) * r * psi1 / psi0
                    )

                return func

            def func(r):
                first, second = (
                    normalized_wright(params, self.norm, r, k, config).value
                    for k in (1, 2)
                )
                return 1 + 2 * r * second / first

            return func

        nu = params.nu

        def jackson(t):
            return [
                jackson_qbessel(params, t, k, config).value for k in range(3)
            ]

        if self.norm is Norm.F:

            def func(r):
                j0, j1, j2 = jackson(r)
                return 1 + 2 * r * ((1 / nu - 1) * j1 / j0 + j2 / j1)

        elif self.norm is Norm.G:

            def func(r):
                j0, j1, j2 = jackson(r)
                numerator = (
                    (2 * nu - 1) * (nu - 1) * j0
                    + (5 - 4 * nu) * r * j1
                    + 2 * r * r * j2
                )
                return numerator / ((1 - nu) * j0 + r * j1)

        else:

            def func(r):
                t = np.sqrt(r)
                j0, j1, j2 = jackson(t)
                numerator = (
                    (nu - 1) * (nu - 2) * j0
                    + (4 - 2 * nu) * t * j1
                    + t * t * j2
                )
                return numerator / ((2 - nu) * j0 + t * j1)

        return func


class ZeroSum:
    """
    S(w) = sum_k w / (w_k - w) over a zero table, corrected for the
    omitted zeros by their first tail moments

    The tail moment T_m is the Rayleigh sum sigma_m minus the kept zeros'
    contribution; the tail equals sum_m w^m T_m.
    """

    def __init__(self, table: ZeroTable, moments: int):
        self.poles = table.pole_values()
        self.moments = moments
        sigma = rayleigh_sums(table.target, moments + 1)
        # rounding can push a negligible tail below zero
        self.tails = [
            max(s - float(np.sum(self.poles ** -(m + 1))), 0.0)
            for m, s in enumerate(sigma)
        ]

    def __call__(self, w: float) -> float:
        kept = float(np.sum(w / (self.poles - w)))
        correction = sum(
            w ** (m + 1) * self.tails[m] for m in range(self.moments)
        )
        return kept + correction

    def bound(self, w: float) -> float:
        """
        Bound on the error of __call__ for 0 <= w < largest kept pole
        """
        largest = self.poles[-1]
        return (
            w ** (self.moments + 1)
            * self.tails[self.moments]
            / (1 - w / largest)
        )


def _zero_sum_function(target: UCTarget, r_max: float, cfg, source):
    terms = target.sum_terms()
    w_max = target.sum_variable(r_max)
    count = cfg.zero_count
    while True:
        sums = [
            (ZeroSum(source(t, count), cfg.rayleigh_terms), weight)
            for t, weight in terms
        ]
        tail = sum(abs(weight) * s.bound(w_max) for s, weight in sums)
        if tail <= 0.1 * cfg.tail_tol:
            break
        if count >= cfg.max_zero_count:
            raise NonConvergenceError(
                f"zero sum tail {tail:.3g} exceeds {0.1 * cfg.tail_tol:.3g} "
                f"with {count} zeros"
            )
        count = min(2 * count, cfg.max_zero_count)
        logger.debug("zero sum tail %.3g, escalating to %d zeros", tail, count)

    def func(r):
        w = target.sum_variable(r)
        return 1 + sum(weight * s(w) for s, weight in sums)

    return func, count, tail


def find_decreasing_root(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    rtol: float,
    coarse_width: float = COARSE_WIDTH,
) -> Tuple[float, Tuple[float, float], int]:
    """
    Root of a decreasing function with func(lo) > 0 > func(hi)

    Bisects to relative width coarse_width, then polishes with brentq inside
    that bracket. Returns the root, the bisection bracket and the total
    iteration count.
    """
    f_lo, f_hi = func(lo), func(hi)
    if not (f_lo > 0 > f_hi):
        raise BracketError(
            f"no decreasing sign change on [{lo!r}, {hi!r}]: "
            f"f(lo)={f_lo!r}, f(hi)={f_hi!r}"
        )
    iterations = 0
    while hi - lo > coarse_width * hi:
        mid = 0.5 * (lo + hi)
        value = func(mid)
        iterations += 1
        if value == 0:
            return mid, (lo, hi), iterations
        if value > 0:
            lo = mid
        else:
            hi = mid
    root, info = brentq(
        func, lo, hi, xtol=rtol * lo, rtol=rtol, full_output=True
    )
    if not info.converged:
        raise NonConvergenceError(f"brentq did not converge: {info.flag}")
    return root, (lo, hi), iterations + info.iterations


def _hypothesis_note(target: UCTarget) -> Optional[str]:
    if target.is_wright or target.params.nu > 0:
        return None
    note = (
        f"nu={target.params.nu} lies in (-1, 0], outside the range where "
        "the derivative factorizations are known"
    )
    logger.warning(note)
    return note


def radius_uc(
    target: UCTarget,
    method: Method = Method.DIRECT_EQ,
    config: Optional[NumericsConfig] = None,
    zero_source: Optional[ZeroSource] = None,
) -> RadiusResult:
    """
    Radius of uniform convexity of target by the direct equation or the
    zero sum route
    """
    method = Method(method)
    if method is Method.ORACLE:
        raise ValueError("use oracle.oracle_radius for the oracle route")
    cfg = resolve_config(config)
    source = compute_source(config) if zero_source is None else zero_source
    domain = target.domain_upper(source(target.critical_target(), 1))
    lo = cfg.edge_fraction * domain
    hi = (1 - cfg.pole_guard) * domain
    count, tail = 0, 0.0
    if method is Method.DIRECT_EQ:
        func = target.direct_function(config)
    else:
        func, count, tail = _zero_sum_function(target, hi, cfg, source)
    root, bracket, iterations = find_decreasing_root(
        func, lo, hi, cfg.root_rtol
    )
    return RadiusResult(
        radius=float(root),
        bracket=(float(bracket[0]), float(bracket[1])),
        residual=float(func(root)),
        iterations=iterations,
        method=method,
        domain_upper=domain,
        zero_count=count,
        tail_bound=float(tail),
        note=_hypothesis_note(target),
    )


@dataclass(frozen=True)
class DualRouteResult:
    """
    The same radius computed by both routes
    """

    direct: RadiusResult
    zero_sum: RadiusResult
    difference: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "difference", abs(self.direct.radius - self.zero_sum.radius)
        )

    def agrees(self, tol: float) -> bool:
        return self.difference < tol

    def to_dict(self) -> dict:
        return {
            "radius": self.direct.radius,
            "residual": self.direct.residual,
            "difference": self.difference,
            "direct_eq": self.direct.to_dict(),
            "zero_sum": self.zero_sum.to_dict(),
        }


def dual_route(
    target: UCTarget,
    config: Optional[NumericsConfig] = None,
    zero_source: Optional[ZeroSource] = None,
) -> DualRouteResult:
    """
    Runs both routes and reports their difference
    """
    source = compute_source(config) if zero_source is None else zero_source
    return DualRouteResult(
        direct=radius_uc(target, Method.DIRECT_EQ, config, source),
        zero_sum=radius_uc(target, Method.ZERO_SUM, config, source),
    )


def radius_uc_qbessel_f(
    params: QBesselParams,
    method: Method = Method.DIRECT_EQ,
    config: Optional[NumericsConfig] = None,
    zero_source: Optional[ZeroSource] = None,
) -> RadiusResult:
    """
    Radius of f_nu^(s), the root of Phi_nu on (0, j'_(nu,1)), nu > 0
    """
    return radius_uc(UCTarget(params, Norm.F), method, config, zero_source)


def radius_uc_qbessel_g(
    params: QBesselParams,
    method: Method = Method.DIRECT_EQ,
    config: Optional[NumericsConfig] = None,
    zero_source: Optional[ZeroSource] = None,
) -> RadiusResult:
    """
    Radius of g_nu^(s), the root of A_nu on (0, alpha_(nu,1)) (or gamma)
    """
    return radius_uc(UCTarget(params, Norm.G), method, config, zero_source)


def radius_uc_qbessel_h(
    params: QBesselParams,
    method: Method = Method.DIRECT_EQ,
    config: Optional[NumericsConfig] = None,
    zero_source: Optional[ZeroSource] = None,
) -> RadiusResult:
    """
    Radius of h_nu^(s), the root of B_nu on (0, beta_(nu,1)^2) (or delta)
    """
    return radius_uc(UCTarget(params, Norm.H), method, config, zero_source)


def radius_uc_wright_f(
    params: WrightParams,
    method: Method = Method.DIRECT_EQ,
    config: Optional[NumericsConfig] = None,
    zero_source: Optional[ZeroSource] = None,
) -> RadiusResult:
    """
    Radius of f_(rho,beta), the root of u on (0, zeta'_1)
    """
    return radius_uc(UCTarget(params, Norm.F), method, config, zero_source)


def radius_uc_wright_g(
    params: WrightParams,
    method: Method = Method.DIRECT_EQ,
    config: Optional[NumericsConfig] = None,
    zero_source: Optional[ZeroSource] = None,
) -> RadiusResult:
    return radius_uc(UCTarget(params, Norm.G), method, config, zero_source)


def radius_uc_wright_h(
    params: WrightParams,
    method: Method = Method.DIRECT_EQ,
    config: Optional[NumericsConfig] = None,
    zero_source: Optional[ZeroSource] = None,
) -> RadiusResult:
    return radius_uc(UCTarget(params, Norm.H), method, config, zero_source)
