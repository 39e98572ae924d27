"""
Localization and refinement of the positive zeros of q-Bessel, Bessel and
Wright target functions, their Rayleigh power sums, and a disk cache for
zero tables

Every target is an entire function of w (w = z^2 for even targets, w = z
otherwise) with value 1 at the origin and only positive real zeros, so it
equals the product of (1 - w / w_k) over its zeros w_k. The scanner works
on that stripped form, which removes the z^nu and z^(beta - 1) prefactors.
"""

import hashlib
import json
import logging
import math
import os
import threading
from dataclasses import dataclass
from enum import Enum
from itertools import islice
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np
from mpmath import MPContext
from scipy.optimize import brentq

from .config import NumericsConfig, resolve_config
from .exceptions import (
    DomainError,
    NonConvergenceError,
    NumericalError,
    ScanExhaustedError,
)
from .params import (
    BesselParams,
    Kind,
    QBesselParams,
    WrightParams,
    params_from_descriptor,
)
from .summation import as_argument, unwrap

logger = logging.getLogger(__name__)

Params = Union[QBesselParams, WrightParams, BesselParams]

SCAN_START_FRACTION = 0.9
SCAN_EXTENSION_FACTOR = 8.0
GAP_FRACTION = 0.25
GUARD_DIGITS = 30
PLAN_DPS = 15
RAYLEIGH_DPS = 50
MAX_PLAN_TERMS = 20000
BRENTQ_MIN_RTOL = 4 * np.finfo(float).eps


class ZeroKind(str, Enum):
    """
    Which function built from a family member has its zeros located
    """

    FUNCTION = "function"
    "J, the classical J_nu, or lambda (whose zeros are those of Psi)"
    DERIVATIVE = "derivative"
    "dJ/dz for q-Bessel and classical Bessel, nu > 0"
    ALPHA = "alpha"
    "z J' + (1 - nu) J for Jackson2, the zeros of g'"
    BETA = "beta"
    "z J' + (2 - nu) J for Jackson2, whose squared zeros are those of h'"
    GAMMA = "gamma"
    "z J' + (1 - nu) J for Jackson3"
    DELTA = "delta"
    "z J' + (2 - nu) J for Jackson3"
    PSI_PRIME = "psi_prime"
    "Psi'"
    G_PRIME = "g_prime"
    "g' of the Wright normalization"
    H_PRIME = "h_prime"
    "h' of the Wright normalization"


_ODD_WEIGHT = {ZeroKind.ALPHA, ZeroKind.GAMMA, ZeroKind.G_PRIME}
_SHIFT_WEIGHT = {ZeroKind.BETA, ZeroKind.DELTA, ZeroKind.H_PRIME}


def _allowed_kinds(params: Params):
    if isinstance(params, QBesselParams):
        extra = (
            {ZeroKind.ALPHA, ZeroKind.BETA}
            if params.kind is Kind.JACKSON2
            else {ZeroKind.GAMMA, ZeroKind.DELTA}
        )
        return {ZeroKind.FUNCTION, ZeroKind.DERIVATIVE} | extra
    if isinstance(params, WrightParams):
        return {
            ZeroKind.FUNCTION,
            ZeroKind.PSI_PRIME,
            ZeroKind.G_PRIME,
            ZeroKind.H_PRIME,
        }
    if isinstance(params, BesselParams):
        return {ZeroKind.FUNCTION, ZeroKind.DERIVATIVE}
    raise TypeError(f"unsupported parameters {params!r}")


@dataclass(frozen=True)
class ZeroTarget:
    """
    A real function on (0, inf) whose positive zeros are wanted
    """

    params: Params
    "the family member"
    which: ZeroKind
    "the function built from it"

    def __post_init__(self):
        object.__setattr__(self, "which", ZeroKind(self.which))
        if self.which not in _allowed_kinds(self.params):
            raise DomainError(
                f"{self.which.value} zeros are not defined for "
                f"{self.family} parameters {self.params}"
            )
        if isinstance(self.params, WrightParams):
            self.params.require_radius_domain()
        if self.which is ZeroKind.DERIVATIVE and not self.params.nu > 0:
            raise DomainError(
                f"derivative zeros require nu > 0, got nu={self.params.nu}"
            )

    @property
    def family(self) -> str:
        return self.params.descriptor()["family"]

    @property
    def even(self) -> bool:
        """
        True when the stripped function is a series in z^2
        """
        return self.which is not ZeroKind.H_PRIME

    def descriptor(self) -> dict:
        out = dict(self.params.descriptor())
        out["which"] = self.which.value
        return out

    @classmethod
    def from_descriptor(cls, descriptor: dict) -> "ZeroTarget":
        descriptor = dict(descriptor)
        which = descriptor.pop("which")
        return cls(params_from_descriptor(descriptor), ZeroKind(which))


def _base_coefficients(params: Params, ctx) -> Iterator:
    # coefficients p_n of P(w) = sum p_n w^n with p_0 = 1
    if isinstance(params, WrightParams):
        scale = ctx.gamma(ctx.mpf(params.beta))
        rho, beta = ctx.mpf(params.rho), ctx.mpf(params.beta)
        n = 0
        while True:
            yield (-1) ** n * scale * ctx.rgamma(n * rho + beta) / (
                ctx.factorial(n)
            )
            n += 1
    nu = ctx.mpf(params.nu)
    value = ctx.mpf(1)
    n = 0
    while True:
        yield value
        if isinstance(params, BesselParams):
            value = -value / (4 * (n + 1) * (n + nu + 1))
        else:
            q = ctx.mpf(params.q)
            if params.kind is Kind.JACKSON2:
                weight, scale = q ** (2 * n + 1 + nu), 4
            else:
                weight, scale = q ** (n + 1), 1
            value = -value * weight / (
                scale * (1 - q ** (n + 1)) * (1 - q ** (n + nu + 1))
            )
        n += 1


def _weight(target: ZeroTarget, ctx, n: int):
    which = target.which
    if which in _ODD_WEIGHT:
        return ctx.mpf(2 * n + 1)
    if which in _SHIFT_WEIGHT:
        return ctx.mpf(n + 1)
    if which is ZeroKind.DERIVATIVE:
        nu = ctx.mpf(target.params.nu)
        return (2 * n + nu) / nu
    if which is ZeroKind.PSI_PRIME:
        beta = ctx.mpf(target.params.beta)
        return (2 * n + beta) / beta
    return ctx.mpf(1)


def target_coefficients(target: ZeroTarget, ctx) -> Iterator:
    """
    Taylor coefficients in w of the stripped target, the first being 1
    """
    for n, base in enumerate(_base_coefficients(target.params, ctx)):
        yield _weight(target, ctx, n) * base


def rayleigh_sums(target: ZeroTarget, order: int) -> List[float]:
    """
    sigma_m = sum_k w_k^(-m) for m = 1 .. order, from Newton's identities

    Exact for the whole infinite zero sequence, so sigma_1 bounds the first
    zero from below: w_1 >= 1 / sigma_1.
    """
    if order < 1:
        raise DomainError(f"order must be at least 1, got {order}")
    ctx = MPContext()
    ctx.dps = RAYLEIGH_DPS
    coefficients = list(islice(target_coefficients(target, ctx), order + 1))
    # elementary symmetric functions of the reciprocal zeros
    elementary = [(-1) ** k * c for k, c in enumerate(coefficients)]
    sums = [ctx.zero] * (order + 1)
    for m in range(1, order + 1):
        total = (-1) ** (m - 1) * m * elementary[m]
        for i in range(1, m):
            total += (-1) ** (i - 1) * elementary[i] * sums[m - i]
        sums[m] = total
    return [float(s) for s in sums[1:]]


@dataclass(frozen=True)
class _Plan:
    terms: int
    dps: int


def _plan(target: ZeroTarget, w_max: float) -> _Plan:
    """
    Picks the number of terms and the working precision that evaluate the
    stripped target on [0, w_max] without losing digits to cancellation
    """
    ctx = MPContext()
    ctx.dps = PLAN_DPS
    log_w = float(ctx.log10(ctx.mpf(w_max)))
    peak, peak_index = -math.inf, 0
    for n, coefficient in enumerate(target_coefficients(target, ctx)):
        if n > MAX_PLAN_TERMS:
            raise NonConvergenceError(
                f"stripped series needs more than {MAX_PLAN_TERMS} terms "
                f"at w = {w_max:g}"
            )
        if coefficient == 0:
            continue
        size = float(ctx.log10(abs(coefficient))) + n * log_w
        if size > peak:
            peak, peak_index = size, n
        digits = GUARD_DIGITS + max(0, math.ceil(peak))
        if n > peak_index and size < peak - digits - 5:
            return _Plan(terms=n + 1, dps=digits)


class _StrippedFunction:
    """
    The stripped target evaluated in extended precision for 0 < x <= x_max
    """

    def __init__(self, target: ZeroTarget, x_max: float):
        self.even = target.even
        plan = _plan(target, x_max * x_max if self.even else x_max)
        self.ctx = MPContext()
        self.ctx.dps = plan.dps
        coefficients = list(
            islice(target_coefficients(target, self.ctx), plan.terms)
        )
        self._reversed = coefficients[::-1]

    def __call__(self, x: float):
        w = self.ctx.mpf(x)
        if self.even:
            w = w * w
        return self.ctx.polyval(self._reversed, w)


def _to_z(w: float, even: bool) -> float:
    return math.sqrt(w) if even else w


def _bisect(func, lo, hi, flo, tol) -> Tuple[float, Tuple[float, float]]:
    positive_lo = flo > 0
    ratio = (hi - lo) / (tol * lo)
    limit = max(8, math.ceil(math.log2(ratio)) if ratio > 1 else 0) + 8
    for _ in range(limit):
        if hi - lo <= tol * lo:
            return 0.5 * (lo + hi), (lo, hi)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        value = func(mid)
        if value == 0:
            return mid, (lo, hi)
        if (value > 0) == positive_lo:
            lo = mid
        else:
            hi = mid
    raise NumericalError(
        f"bisection stagnated on [{lo!r}, {hi!r}]; suspected double root"
    )


def _refine(func, lo, hi, flo, tol) -> Tuple[float, Tuple[float, float]]:
    """
    brentq on the rounded values, certified by a sign change across a
    bracket narrower than tol around its root; bisection otherwise
    """
    rtol = 0.125 * tol
    if rtol < BRENTQ_MIN_RTOL:
        return _bisect(func, lo, hi, flo, tol)
    try:
        root = brentq(
            lambda x: float(func(x)), lo, hi, xtol=rtol * lo, rtol=rtol
        )
    except ValueError:
        # the rounded values lost the sign change
        return _bisect(func, lo, hi, flo, tol)
    left = max(lo, root * (1 - 0.45 * tol))
    right = min(hi, root * (1 + 0.45 * tol))
    f_left, f_right = func(left), func(right)
    if f_left == 0 or f_right == 0 or (f_left > 0) != (f_right > 0):
        return root, (left, right)
    return _bisect(func, lo, hi, flo, tol)


def _sign_changes(func, left, right, f_left, f_right):
    # one level of subdivision catches two zeros inside one step
    mid = 0.5 * (left + right)
    f_mid = func(mid)
    if f_mid == 0:
        mid = mid * (1 + 1e-12)
        f_mid = func(mid)
    out = []
    for lo, hi, flo, fhi in (
        (left, mid, f_left, f_mid),
        (mid, right, f_mid, f_right),
    ):
        if (flo > 0) != (fhi > 0):
            out.append((lo, hi, flo, fhi))
    return out


@dataclass(frozen=True)
class ZeroTable:
    """
    The first positive zeros of a target with certified brackets
    """

    target: ZeroTarget
    zeros: Tuple[float, ...]
    "strictly increasing positive zeros in z"
    brackets: Tuple[Tuple[float, float], ...]
    "sign change intervals, one per zero"
    tol: float
    "relative bracket width reached by bisection"
    residuals: Tuple[float, ...] = ()
    "|F(zero)| relative to |F| at the ends of the scan step"

    def __len__(self) -> int:
        return len(self.zeros)

    def pole_values(self) -> np.ndarray:
        """
        Zeros in the variable of the stripped function: z^2 or z
        """
        zeros = np.asarray(self.zeros, dtype=float)
        return zeros**2 if self.target.even else zeros

    def head(self, count: int) -> "ZeroTable":
        if count > len(self):
            raise ValueError(f"table has {len(self)} zeros, not {count}")
        return ZeroTable(
            target=self.target,
            zeros=self.zeros[:count],
            brackets=self.brackets[:count],
            tol=self.tol,
            residuals=self.residuals[:count],
        )

    def to_dict(self) -> dict:
        return {
            "target": self.target.descriptor(),
            "zeros": list(self.zeros),
            "brackets": [list(b) for b in self.brackets],
            "tol": self.tol,
            "residuals": list(self.residuals),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ZeroTable":
        return cls(
            target=ZeroTarget.from_descriptor(data["target"]),
            zeros=tuple(float(z) for z in data["zeros"]),
            brackets=tuple(
                (float(lo), float(hi)) for lo, hi in data["brackets"]
            ),
            tol=float(data["tol"]),
            residuals=tuple(float(r) for r in data.get("residuals", ())),
        )


def scan_and_refine(
    target: ZeroTarget,
    count: int,
    tol: Optional[float] = None,
    upper_bound: Optional[float] = None,
    max_extensions: Optional[int] = None,
    config: Optional[NumericsConfig] = None,
    resume: Optional[ZeroTable] = None,
) -> ZeroTable:
    """
    Finds the first count positive zeros of target

    The scan starts just below the certified lower bound 1 / sigma_1 and
    steps multiplicatively, never further than a quarter of the last gap
    between zeros. Each sign change is refined to relative width tol. The
    scan bound starts at upper_bound, or a multiple of the first zero
    estimate sigma_1 / sigma_2, and grows eightfold at most max_extensions
    times before ScanExhaustedError.

    A resume table of the same target and tol keeps its zeros; the scan
    continues from the right end of its last bracket.
    """
    if count < 1:
        raise DomainError(f"count must be at least 1, got {count}")
    cfg = resolve_config(config)
    tol = cfg.zero_tol if tol is None else tol
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    extensions_left = (
        cfg.scan_extensions if max_extensions is None else max_extensions
    )
    even = target.even
    sigma1, sigma2 = rayleigh_sums(target, 2)
    lower = _to_z(1 / sigma1, even)
    estimate = _to_z(sigma1 / sigma2, even)
    upper = (
        cfg.scan_upper_factor * estimate
        if upper_bound is None
        else float(upper_bound)
    )
    x = SCAN_START_FRACTION * lower
    zeros: List[float] = []
    brackets: List[Tuple[float, float]] = []
    residuals: List[float] = []
    if resume is not None and len(resume) > 0:
        if resume.target != target or resume.tol != tol:
            raise ValueError("resume table has another target or tol")
        if len(resume) >= count:
            return resume.head(count)
        zeros, brackets = list(resume.zeros), list(resume.brackets)
        residuals = list(resume.residuals)
        x = brackets[-1][1]
        while upper <= x:
            upper *= SCAN_EXTENSION_FACTOR
    func = _StrippedFunction(target, upper)
    fx = func(x)
    if fx == 0:
        x = x * (1 + tol)
        fx = func(x)
    while len(zeros) < count:
        step = (cfg.scan_growth - 1) * x
        if zeros:
            gap = zeros[-1] - (zeros[-2] if len(zeros) > 1 else 0.0)
            step = min(step, GAP_FRACTION * gap)
        right = x + step
        if right > upper:
            if extensions_left <= 0:
                raise ScanExhaustedError(
                    f"found {len(zeros)} of {count} {target.which.value} "
                    f"zeros below {upper:g}"
                )
            extensions_left -= 1
            upper *= SCAN_EXTENSION_FACTOR
            logger.debug(
                "extending %s scan to %g", target.which.value, upper
            )
            func = _StrippedFunction(target, upper)
            fx = func(x)
            continue
        f_right = func(right)
        if f_right == 0:
            right = right * (1 + tol)
            f_right = func(right)
        for lo, hi, flo, fhi in _sign_changes(func, x, right, fx, f_right):
            zero, bracket = _refine(func, lo, hi, flo, tol)
            scale = abs(flo) + abs(fhi)
            zeros.append(zero)
            brackets.append(bracket)
            residuals.append(float(abs(func(zero)) / scale))
        x, fx = right, f_right
    logger.debug(
        "found %d %s zeros of %s",
        count,
        target.which.value,
        target.descriptor(),
    )
    return ZeroTable(
        target=target,
        zeros=tuple(zeros[:count]),
        brackets=tuple(brackets[:count]),
        tol=tol,
        residuals=tuple(residuals[:count]),
    )


@dataclass(frozen=True)
class InterlacingReport:
    """
    Outcome of checking a_1 < b_1 < a_2 < b_2 < ...
    """

    pairs: Tuple[bool, ...]
    "one entry per adjacent pair of the merged chain"
    passed: bool

    def to_dict(self) -> dict:
        return {"pairs": list(self.pairs), "passed": self.passed}


def interlacing_check(a: ZeroTable, b: ZeroTable) -> InterlacingReport:
    """
    Checks that the zeros of a and b strictly alternate, starting with a

    The compared window holds the first n zeros of each table, n the
    shorter length, plus a_(n + 1) when a has it.
    """
    if a.target.params != b.target.params:
        raise ValueError("interlacing needs tables of the same parameters")
    window = min(len(a), len(b))
    if window == 0:
        raise ValueError("interlacing needs non empty tables")
    chain: List[float] = []
    for k in range(window):
        chain.extend((a.zeros[k], b.zeros[k]))
    if len(a) > window:
        chain.append(a.zeros[window])
    pairs = tuple(
        bool(left < right) for left, right in zip(chain, chain[1:])
    )
    return InterlacingReport(pairs=pairs, passed=all(pairs))


def truncated_product(table: ZeroTable, z):
    """
    The Hadamard product over the zeros in table, an approximation of the
    stripped target at z
    """
    z, scalar = as_argument(z)
    w = z * z if table.target.even else z
    poles = table.pole_values()
    value = np.prod(1 - np.multiply.outer(w, 1 / poles), axis=-1)
    return unwrap(value, scalar)


ZeroSource = Callable[[ZeroTarget, int], ZeroTable]


def compute_source(config: Optional[NumericsConfig] = None) -> ZeroSource:
    """
    A zero source that scans, keeping the longest table of each target in
    memory and extending it when more zeros are asked for
    """
    tables: Dict[ZeroTarget, ZeroTable] = {}
    lock = threading.Lock()

    def fetch(target: ZeroTarget, count: int) -> ZeroTable:
        with lock:
            known = tables.get(target)
        if known is not None and len(known) >= count:
            return known.head(count)
        table = scan_and_refine(target, count, config=config, resume=known)
        with lock:
            if len(tables.get(target, ())) < len(table):
                tables[target] = table
        return table

    return fetch


class ZeroCache:
    """
    Zero tables stored as JSON files named by a hash of target and tol
    """

    def __init__(self, directory):
        self.directory = Path(directory)

    @staticmethod
    def key(target: ZeroTarget, tol: float) -> str:
        payload = json.dumps(
            {"target": target.descriptor(), "tol": tol}, sort_keys=True
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def path(self, target: ZeroTarget, tol: float) -> Path:
        return self.directory / f"{self.key(target, tol)}.json"

    def read(self, target: ZeroTarget, tol: float) -> Optional[ZeroTable]:
        """
        The whole cached table, or None
        """
        path = self.path(target, tol)
        if not path.exists():
            return None
        with open(path, encoding="utf-8") as handle:
            return ZeroTable.from_dict(json.load(handle))

    def load(
        self, target: ZeroTarget, count: int, tol: float
    ) -> Optional[ZeroTable]:
        """
        The cached table cut to count zeros, or None if it is too short
        """
        table = self.read(target, tol)
        if table is None or len(table) < count:
            return None
        return table.head(count)

    def store(self, table: ZeroTable):
        path = self.path(table.target, table.tol)
        if path.exists():
            with open(path, encoding="utf-8") as handle:
                if len(json.load(handle)["zeros"]) >= len(table):
                    return
        self.directory.mkdir(parents=True, exist_ok=True)
        partial = path.with_suffix(
            f".{os.getpid()}.{threading.get_ident()}.tmp"
        )
        with open(partial, "w", encoding="utf-8") as handle:
            json.dump(table.to_dict(), handle)
        os.replace(partial, path)
        logger.debug("cached %d zeros in %s", len(table), path)

    def source(self, config: Optional[NumericsConfig] = None) -> ZeroSource:
        """
        A zero source that reads this cache, extends a short cached table and
        stores the result
        """
        tol = resolve_config(config).zero_tol

        def fetch(target: ZeroTarget, count: int) -> ZeroTable:
            known = self.read(target, tol)
            if known is not None and len(known) >= count:
                return known.head(count)
            table = scan_and_refine(
                target, count, tol=tol, config=config, resume=known
            )
            self.store(table)
            return table

        return fetch
