"""
The Wright function phi(rho, beta, z), its even form lambda, Psi and the
three normalizations f, g and h
"""

import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import gamma, rgamma

from .config import NumericsConfig, resolve_config
from .exceptions import DomainError
from .normal_forms import normalized_value
from .params import Norm, WrightParams
from .qseries import check_denominators
from .summation import EvalResult, as_argument, sum_series, unwrap

WRIGHT_DECAY = 0.5


def _check_deriv(deriv: int):
    if deriv not in (0, 1, 2):
        raise DomainError(f"deriv must be 0, 1 or 2, got {deriv}")


def _wrap(result: EvalResult, scalar: bool) -> EvalResult:
    return EvalResult(
        value=unwrap(result.value, scalar),
        abs_error_est=unwrap(result.abs_error_est, scalar),
        terms_used=result.terms_used,
    )


def _phi(params: WrightParams, z: np.ndarray, deriv: int, cfg) -> EvalResult:
    rho, beta = params.rho, params.beta
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    power = np.ones(z.shape, dtype=z.dtype)

    def term(m):
        nonlocal power
        if m > 0:
            power = power * z / m
        # rgamma is entire: poles of gamma give a zero term
        return power * rgamma((m + deriv) * rho + beta)

    def ratio(m):
        below = rgamma((m + deriv) * rho + beta)
        above = rgamma((m + 1 + deriv) * rho + beta)
        if below == 0 or above == 0:
            return math.inf
        return zmax / (m + 1) * abs(above / below)

    return sum_series(
        term,
        ratio,
        z.shape,
        z.dtype,
        decay=WRIGHT_DECAY,
        rtol=cfg.series_rtol,
        max_terms=cfg.max_terms,
    )


def wright_phi(
    params: WrightParams,
    z,
    deriv: int = 0,
    config: Optional[NumericsConfig] = None,
) -> EvalResult:
    """
    phi(rho, beta, z) = sum z^n / (n! Gamma(n rho + beta)) or a derivative

    The k-th derivative is sum z^m Gamma((m + k) rho + beta)^-1 / m!.
    """
    _check_deriv(deriv)
    z, scalar = as_argument(z)
    return _wrap(_phi(params, z, deriv, resolve_config(config)), scalar)


def _lambda(params, z, deriv, cfg) -> EvalResult:
    w = -(z * z)
    phis = [_phi(params, w, k, cfg) for k in range(deriv + 1)]
    if deriv == 0:
        return phis[0]
    if deriv == 1:
        value = -2 * z * phis[1].value
        error = 2 * np.abs(z) * phis[1].abs_error_est
    else:
        value = -2 * phis[1].value + 4 * z**2 * phis[2].value
        error = (
            2 * phis[1].abs_error_est
            + 4 * np.abs(z) ** 2 * phis[2].abs_error_est
        )
    return EvalResult(
        value=value,
        abs_error_est=error,
        terms_used=max(p.terms_used for p in phis),
    )


def lambda_func(
    params: WrightParams,
    z,
    deriv: int = 0,
    config: Optional[NumericsConfig] = None,
) -> EvalResult:
    """
    lambda(z) = phi(rho, beta, -z^2) and its z-derivatives
    """
    _check_deriv(deriv)
    z, scalar = as_argument(z)
    return _wrap(_lambda(params, z, deriv, resolve_config(config)), scalar)


def _psi_parts(params, z, cfg) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    # Psi, Psi', Psi'' on the principal branch of z^beta
    beta = params.beta
    lam = [_lambda(params, z, k, cfg).value for k in range(3)]
    with np.errstate(divide="ignore", invalid="ignore"):
        zb = np.power(z, beta)
        zb1 = np.power(z, beta - 1)
        zb2 = np.power(z, beta - 2)
    psi0 = zb * lam[0]
    psi1 = beta * zb1 * lam[0] + zb * lam[1]
    psi2 = (
        beta * (beta - 1) * zb2 * lam[0]
        + 2 * beta * zb1 * lam[1]
        + zb * lam[2]
    )
    return psi0, psi1, psi2


def psi_func(
    params: WrightParams,
    z,
    deriv: int = 0,
    config: Optional[NumericsConfig] = None,
) -> EvalResult:
    """
    Psi(z) = z^beta lambda(z) for real z > 0, and its derivatives
    """
    _check_deriv(deriv)
    z, scalar = as_argument(z)
    if np.iscomplexobj(z) or np.any(z <= 0):
        raise DomainError("psi_func requires real z > 0")
    cfg = resolve_config(config)
    beta = params.beta
    lams = [_lambda(params, z, k, cfg) for k in range(deriv + 1)]
    # Leibniz rule for z^beta lambda(z)
    if deriv == 0:
        weights = [z**beta]
    elif deriv == 1:
        weights = [beta * z ** (beta - 1), z**beta]
    else:
        weights = [
            beta * (beta - 1) * z ** (beta - 2),
            2 * beta * z ** (beta - 1),
            z**beta,
        ]
    value = sum(w * lam.value for w, lam in zip(weights, lams))
    error = sum(
        np.abs(w) * lam.abs_error_est for w, lam in zip(weights, lams)
    )
    result = EvalResult(
        value=value,
        abs_error_est=error,
        terms_used=max(lam.terms_used for lam in lams),
    )
    return _wrap(result, scalar)


def stripped_wright(
    params: WrightParams,
    w,
    deriv: int = 0,
    config: Optional[NumericsConfig] = None,
) -> EvalResult:
    """
    P(w) = Gamma(beta) phi(rho, beta, -w), so that P(0) = 1
    """
    _check_deriv(deriv)
    _require_positive_beta(params)
    w, scalar = as_argument(w)
    phi = _phi(params, -w, deriv, resolve_config(config))
    scale = (-1) ** deriv * gamma(params.beta)
    result = EvalResult(
        value=scale * phi.value,
        abs_error_est=abs(scale) * phi.abs_error_est,
        terms_used=phi.terms_used,
    )
    return _wrap(result, scalar)


def _require_positive_beta(params: WrightParams):
    if not params.beta > 0:
        raise DomainError(
            f"normalizations require beta > 0, got beta={params.beta}"
        )


def normalized_wright(
    params: WrightParams,
    norm: Norm,
    z,
    deriv: int = 0,
    config: Optional[NumericsConfig] = None,
) -> EvalResult:
    """
    f_(rho,beta), g_(rho,beta) or h_(rho,beta) and their derivatives

    f = (z^beta Gamma(beta) phi(rho, beta, -z^2))^(1/beta) is evaluated as
    z P(z^2)^(1/beta).
    """
    _require_positive_beta(params)
    z, scalar = as_argument(z)
    result = normalized_value(
        lambda w, k: stripped_wright(params, w, k, config),
        Norm(norm),
        z,
        deriv,
        order=params.beta,
    )
    return _wrap(result, scalar)


def ratio_one_plus_zfpp_fp_wright(
    params: WrightParams,
    norm: Norm,
    z,
    config: Optional[NumericsConfig] = None,
):
    """
    1 + z f''(z) / f'(z) for the requested Wright normalization

    For f this is 1 + z Psi''/Psi' + (1/beta - 1) z Psi'/Psi.
    """
    norm = Norm(norm)
    _require_positive_beta(params)
    cfg = resolve_config(config)
    z, scalar = as_argument(z)
    origin = z == 0
    if norm is Norm.F:
        psi0, psi1, psi2 = _psi_parts(params, z, cfg)
        check_denominators([psi0, psi1], ~origin, cfg.denominator_floor)
        with np.errstate(divide="ignore", invalid="ignore"):
            value = (
                1
                + z * psi2 / psi1
                + (1 / params.beta - 1) * z * psi1 / psi0
            )
    else:
        first, second = (
            normalized_wright(params, norm, z, k, config).value
            for k in (1, 2)
        )
        check_denominators([first], ~origin, cfg.denominator_floor)
        with np.errstate(divide="ignore", invalid="ignore"):
            value = 1 + z * second / first
    value = np.where(origin, 1.0, value)
    return unwrap(value, scalar)
