"""
q-Pochhammer symbols, Jackson's second and third q-Bessel functions and
their normalizations, evaluated by direct series summation
"""

import math
from typing import List, Optional

import numpy as np
from scipy.special import rgamma

from .config import NumericsConfig, resolve_config
from .exceptions import CriticalPointError, DomainError
from .normal_forms import normalized_value
from .params import Kind, Norm, QBesselParams
from .summation import (
    EPS,
    EvalResult,
    as_argument,
    falling_factorial,
    sum_series,
    unwrap,
)


def _check_q(q: float):
    if not 0 < q < 1:
        raise DomainError(f"q must lie in (0, 1), got {q}")


def q_pochhammer(a: float, q: float, n=math.inf) -> EvalResult:
    """
    (a; q)_n = (1 - a)(1 - a q) ... (1 - a q^(n - 1)), n may be math.inf

    The infinite product stops at the first factor with |a q^k| below
    machine epsilon; the omitted factors change the product by at most
    |a q^k| / (1 - q) relative.
    """
    _check_q(q)
    if n != math.inf:
        if n < 0 or int(n) != n:
            raise DomainError(f"n must be a non-negative integer, got {n}")
        factors = 1 - a * q ** np.arange(int(n))
        value = float(np.prod(factors))
        return EvalResult(
            value=value,
            abs_error_est=len(factors) * EPS * abs(value),
            terms_used=max(len(factors), 1),
        )
    if a == 0:
        return EvalResult(value=1.0, abs_error_est=0.0, terms_used=1)
    count = max(1, math.ceil(math.log(EPS / abs(a)) / math.log(q)))
    factors = 1 - a * q ** np.arange(count)
    value = float(np.prod(factors))
    omitted = abs(a) * q**count / (1 - q)
    return EvalResult(
        value=value,
        abs_error_est=abs(value) * (omitted / (1 - omitted) + count * EPS),
        terms_used=count,
    )


def c_nu(nu: float, q: float) -> EvalResult:
    """
    c_nu(q) = (q; q)_inf / (q^(nu + 1); q)_inf
    """
    if not nu > -1:
        raise DomainError(f"c_nu requires nu > -1, got {nu}")
    numerator = q_pochhammer(q, q)
    denominator = q_pochhammer(q ** (nu + 1), q)
    value = numerator.value / denominator.value
    relative = (
        numerator.abs_error_est / abs(numerator.value)
        + denominator.abs_error_est / abs(denominator.value)
    )
    return EvalResult(
        value=value,
        abs_error_est=abs(value) * relative,
        terms_used=max(numerator.terms_used, denominator.terms_used),
    )


class QBesselCoefficients:
    """
    Taylor coefficients p_n of the stripped series P(w) = sum p_n w^n with

        J_nu^(s)(z; q) = z^nu / (K c_nu(q)) * P(z^2)

    where K = 2^nu for Jackson2 and 1 for Jackson3, so that p_0 = 1.
    """

    def __init__(self, params: QBesselParams):
        self.params = params
        self._values: List[float] = [1.0]

    def ratio(self, n: int) -> float:
        """
        p_(n + 1) / p_n
        """
        nu, q = self.params.nu, self.params.q
        if self.params.kind is Kind.JACKSON2:
            weight, scale = q ** (2 * n + 1 + nu), 4.0
        else:
            weight, scale = q ** (n + 1), 1.0
        return -weight / (scale * (1 - q ** (n + 1)) * (1 - q ** (n + nu + 1)))

    def __getitem__(self, n: int) -> float:
        while len(self._values) <= n:
            last = len(self._values) - 1
            self._values.append(self._values[-1] * self.ratio(last))
        return self._values[n]

    def first(self, count: int) -> np.ndarray:
        return np.array([self[n] for n in range(count)])


def prefactor_scale(params: QBesselParams) -> float:
    """
    K c_nu(q), the constant that turns z^(-nu) J into P(z^2)
    """
    scale = 2**params.nu if params.kind is Kind.JACKSON2 else 1.0
    return scale * c_nu(params.nu, params.q).value


def _check_deriv(deriv: int):
    if deriv not in (0, 1, 2):
        raise DomainError(f"deriv must be 0, 1 or 2, got {deriv}")


def jackson_qbessel(
    params: QBesselParams,
    z,
    deriv: int = 0,
    config: Optional[NumericsConfig] = None,
) -> EvalResult:
    """
    J_nu^(s)(z; q) or its first or second derivative

    z may be an array. For non-integer nu and arguments off the positive
    real axis the principal branch of z^nu is used.
    """
    _check_deriv(deriv)
    cfg = resolve_config(config)
    z, scalar = as_argument(z)
    nu = params.nu
    if not np.iscomplexobj(z) and np.any(z < 0) and nu != int(nu):
        z = z.astype(complex)
    coefficients = QBesselCoefficients(params)
    inverse_scale = 1 / prefactor_scale(params)
    zmax2 = float(np.max(np.abs(z))) ** 2 if z.size else 0.0

    def term(n):
        weight = (
            coefficients[n]
            * falling_factorial(2 * n + nu, deriv)
            * inverse_scale
        )
        if weight == 0:
            return np.zeros(z.shape, dtype=z.dtype)
        with np.errstate(divide="ignore", invalid="ignore"):
            return weight * np.power(z, 2 * n + nu - deriv)

    def ratio(n):
        below = falling_factorial(2 * n + nu, deriv)
        if below == 0:
            return math.inf
        above = falling_factorial(2 * n + 2 + nu, deriv)
        return abs(coefficients.ratio(n) * above / below) * zmax2

    result = sum_series(
        term,
        ratio,
        z.shape,
        z.dtype,
        decay=params.q,
        rtol=cfg.series_rtol,
        max_terms=cfg.max_terms,
    )
    return EvalResult(
        value=unwrap(result.value, scalar),
        abs_error_est=unwrap(result.abs_error_est, scalar),
        terms_used=result.terms_used,
    )


def stripped_qbessel(
    params: QBesselParams,
    w,
    deriv: int = 0,
    config: Optional[NumericsConfig] = None,
) -> EvalResult:
    """
    P(w) = K c_nu(q) w^(-nu/2) J_nu^(s)(sqrt(w); q) or its derivatives in w

    P is entire in w with P(0) = 1, so no branch choice is involved.
    """
    _check_deriv(deriv)
    cfg = resolve_config(config)
    w, scalar = as_argument(w)
    coefficients = QBesselCoefficients(params)
    wmax = float(np.max(np.abs(w))) if w.size else 0.0

    def term(n):
        if n < deriv:
            return np.zeros(w.shape, dtype=w.dtype)
        weight = coefficients[n] * falling_factorial(n, deriv)
        return weight * w ** (n - deriv)

    def ratio(n):
        if n < deriv:
            return math.inf
        return (
            abs(coefficients.ratio(n))
            * (n + 1)
            / (n + 1 - deriv)
            * wmax
        )

    result = sum_series(
        term,
        ratio,
        w.shape,
        w.dtype,
        decay=params.q,
        rtol=cfg.series_rtol,
        max_terms=cfg.max_terms,
    )
    return EvalResult(
        value=unwrap(result.value, scalar),
        abs_error_est=unwrap(result.abs_error_est, scalar),
        terms_used=result.terms_used,
    )


def classical_bessel(nu: float, z, config: Optional[NumericsConfig] = None):
    """
    The classical Bessel function J_nu from its ascending series
    """
    if not nu > -1:
        raise DomainError(f"Bessel order requires nu > -1, got {nu}")
    cfg = resolve_config(config)
    z, scalar = as_argument(z)
    if not np.iscomplexobj(z) and np.any(z < 0) and nu != int(nu):
        z = z.astype(complex)
    half = z / 2
    half_max2 = float(np.max(np.abs(half))) ** 2 if z.size else 0.0

    def term(m):
        weight = (-1) ** m * rgamma(m + nu + 1) * rgamma(m + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            return weight * np.power(half, 2 * m + nu)

    def ratio(m):
        return half_max2 / ((m + 1) * (m + nu + 1))

    result = sum_series(
        term,
        ratio,
        z.shape,
        z.dtype,
        decay=0.5,
        rtol=cfg.series_rtol,
        max_terms=cfg.max_terms,
    )
    return EvalResult(
        value=unwrap(result.value, scalar),
        abs_error_est=unwrap(result.abs_error_est, scalar),
        terms_used=result.terms_used,
    )


def normalized_qbessel(
    params: QBesselParams,
    norm: Norm,
    z,
    deriv: int = 0,
    config: Optional[NumericsConfig] = None,
) -> EvalResult:
    """
    f_nu^(s), g_nu^(s) or h_nu^(s) and their first two derivatives

    The h normalization is evaluated as z P(z), which equals
    K c_nu z^(1 - nu/2) J(sqrt(z)) on the principal branch of sqrt.
    """
    norm = Norm(norm)
    if norm is Norm.F and params.nu == 0:
        raise DomainError("the f normalization requires nu != 0")
    z, scalar = as_argument(z)
    result = normalized_value(
        lambda w, k: stripped_qbessel(params, w, k, config),
        norm,
        z,
        deriv,
        order=params.nu,
    )
    return EvalResult(
        value=unwrap(result.value, scalar),
        abs_error_est=unwrap(result.abs_error_est, scalar),
        terms_used=result.terms_used,
    )


def check_denominators(denominators, mask, floor: float):
    """
    Raises CriticalPointError where a masked denominator is below floor
    """
    for denominator in denominators:
        small = np.abs(np.asarray(denominator)) < floor
        if np.any(small & mask):
            raise CriticalPointError(
                "ratio evaluated too close to a zero of its denominator"
            )


def ratio_one_plus_zfpp_fp(
    params: QBesselParams,
    norm: Norm,
    z,
    config: Optional[NumericsConfig] = None,
):
    """
    1 + z f''(z) / f'(z) for the requested normalization

    For f this is 1 + (1/nu - 1) z J'/J + z J''/J', the log derivative of
    f' = (K c_nu)^(1/nu) / nu * J^(1/nu - 1) J'.
    """
    norm = Norm(norm)
    cfg = resolve_config(config)
    z, scalar = as_argument(z)
    origin = z == 0
    if norm is Norm.F:
        if params.nu == 0:
            raise DomainError("the f normalization requires nu != 0")
        j0, j1, j2 = (
            jackson_qbessel(params, z, k, config).value for k in range(3)
        )
        check_denominators([j0, j1], ~origin, cfg.denominator_floor)
        with np.errstate(divide="ignore", invalid="ignore"):
            value = 1 + (1 / params.nu - 1) * z * j1 / j0 + z * j2 / j1
    else:
        first, second = (
            normalized_qbessel(params, norm, z, k, config).value
            for k in (1, 2)
        )
        check_denominators([first], ~origin, cfg.denominator_floor)
        with np.errstate(divide="ignore", invalid="ignore"):
            value = 1 + z * second / first
    value = np.where(origin, 1.0, value)
    return unwrap(value, scalar)
