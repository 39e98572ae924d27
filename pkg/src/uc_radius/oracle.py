"""
Independent check of a radius of uniform convexity by sampling circles

The criterion Re(1 + z f''/f') > |z f''/f'| is tested directly at
z = r exp(i theta); no zero sums and no functional equations are involved.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import MIN_ORACLE_SAMPLES, NumericsConfig, resolve_config
from .exceptions import BracketError, DomainError
from .radius import Method, RadiusResult, UCTarget
from .zeros import ZeroSource, scan_and_refine

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MarginReport:
    """
    The smallest sampled margin Re(Q) - |Q - 1| on the circle |z| = r,
    Q = 1 + z f''/f'
    """

    r: float
    min_margin: float
    argmin_angle: float
    "in [0, 2 pi)"
    samples: int
    "number of angles evaluated"

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "min_margin": self.min_margin,
            "argmin_angle": self.argmin_angle,
            "samples": self.samples,
        }


def sample_angles(samples: int, refine: int) -> np.ndarray:
    """
    A uniform grid of angles plus refine extra angles within one grid step
    of the positive real axis
    """
    step = 2 * np.pi / samples
    uniform = step * np.arange(samples)
    local = np.linspace(-step, step, refine) % (2 * np.pi)
    return np.concatenate([uniform, local])


def uc_margin(
    target: UCTarget,
    r: float,
    samples: Optional[int] = None,
    config: Optional[NumericsConfig] = None,
) -> MarginReport:
    """
    Minimum of Re(1 + z f''/f') - |z f''/f'| over sampled |z| = r
    """
    cfg = resolve_config(config)
    samples = cfg.oracle_samples if samples is None else samples
    if samples < MIN_ORACLE_SAMPLES:
        raise DomainError(
            f"samples must be at least {MIN_ORACLE_SAMPLES}, got {samples}"
        )
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    angles = sample_angles(samples, cfg.oracle_refine_samples)
    quantity = np.asarray(target.ratio(r * np.exp(1j * angles), config))
    margin = quantity.real - np.abs(quantity - 1)
    # argmin takes the first minimum, so ties resolve the same way each run
    index = int(np.argmin(margin))
    return MarginReport(
        r=float(r),
        min_margin=float(margin[index]),
        argmin_angle=float(angles[index]),
        samples=len(angles),
    )


def oracle_radius(
    target: UCTarget,
    tol: Optional[float] = None,
    config: Optional[NumericsConfig] = None,
    zero_source: Optional[ZeroSource] = None,
) -> RadiusResult:
    """
    Bisects r on (0, fraction * first critical zero) against the sign of
    the minimum sampled margin
    """
    cfg = resolve_config(config)
    tol = cfg.oracle_tol if tol is None else tol
    critical_target = target.critical_target()
    if zero_source is None:
        critical = scan_and_refine(
            critical_target, 1, tol=cfg.oracle_scan_tol, config=config
        )
    else:
        critical = zero_source(critical_target, 1)
    domain = target.domain_upper(critical)
    lo, hi = 0.0, cfg.oracle_domain_fraction * domain
    top = uc_margin(target, hi, config=config)
    if not top.min_margin < 0:
        raise BracketError(
            f"margin {top.min_margin:.3g} is not negative at r = {hi:g}; "
            "the search domain is too small"
        )
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        margin = uc_margin(target, mid, config=config).min_margin
        iterations += 1
        if abs(margin) < cfg.margin_zero:
            lo = hi = mid
            break
        if margin > 0:
            lo = mid
        else:
            hi = mid
    radius = 0.5 * (lo + hi)
    report = uc_margin(target, radius, config=config)
    logger.debug(
        "oracle radius %.12g for %s after %d steps",
        radius,
        target.descriptor(),
        iterations,
    )
    return RadiusResult(
        radius=radius,
        bracket=(lo, hi),
        residual=report.min_margin,
        iterations=iterations,
        method=Method.ORACLE,
        domain_upper=domain,
    )


@dataclass(frozen=True)
class PoleSlack:
    """
    Bound minus sampled maximum for the three pole inequalities; all are
    non negative when the inequalities hold
    """

    modulus: float
    "|z/(b - z) - lam z/(a - z)| <= r/(b - r) - lam r/(a - r)"
    real_part: float
    "Re(z/(b - z) - lam z/(a - z)) <= r/(b - r) - lam r/(a - r)"
    single_pole: float
    "Re(z/(b - z)) <= |z/(b - z)| <= r/(b - r)"

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "real_part": self.real_part,
            "single_pole": self.single_pole,
        }


def pole_slack(
    a: float, b: float, lam: float, r: float, samples: int = 512
) -> PoleSlack:
    """
    Slack of the pole inequalities on the sampled circle |z| = r

    Requires a > b > r >= 0 and lam in [0, 1]. The maxima over the disk are
    attained on its boundary circle.
    """
    if not a > b > r >= 0:
        raise DomainError(f"need a > b > r >= 0, got a={a}, b={b}, r={r}")
    if not 0 <= lam <= 1:
        raise DomainError(f"lam must lie in [0, 1], got {lam}")
    z = r * np.exp(2j * np.pi * np.arange(samples) / samples)
    single = z / (b - z)
    combined = single - lam * z / (a - z)
    bound = r / (b - r) - lam * r / (a - r)
    single_bound = r / (b - r)
    single_slack = min(
        single_bound - float(np.max(np.abs(single))),
        float(np.min(np.abs(single) - single.real)),
    )
    return PoleSlack(
        modulus=bound - float(np.max(np.abs(combined))),
        real_part=bound - float(np.max(combined.real)),
        single_pole=single_slack,
    )


def slack_is_nonnegative(slack: PoleSlack, scale: float) -> bool:
    """
    True when every slack is above -scale * 1e-12, the rounding level
    """
    floor = -1e-12 * max(scale, 1.0)
    return all(
        value >= floor
        for value in (slack.modulus, slack.real_part, slack.single_pole)
    )
