"""
The f, g and h normalizations written in terms of a stripped series P with
P(0) = 1:

    g(z) = z P(z^2),    h(z) = z P(z),    f(z) = z P(z^2) ** (1 / order)

Both families reduce to these. The fractional power in f is only ever taken
of P, which stays near 1 inside the disks of interest, so no branch of
z ** order is chosen.
"""

from typing import Callable, List

import numpy as np

from .exceptions import DomainError
from .params import Norm
from .summation import EvalResult

# Stripped(w, deriv) -> EvalResult of P^(deriv)(w)
Stripped = Callable[[np.ndarray, int], EvalResult]


def _stripped_triple(stripped: Stripped, w, deriv: int) -> List:
    return [stripped(w, k) for k in range(deriv + 1)]


def normalized_value(
    stripped: Stripped,
    norm: Norm,
    z: np.ndarray,
    deriv: int,
    order: float = 1.0,
) -> EvalResult:
    """
    Value or derivative (deriv in 0, 1, 2) of the requested normalization
    """
    if deriv not in (0, 1, 2):
        raise DomainError(f"deriv must be 0, 1 or 2, got {deriv}")
    norm = Norm(norm)
    if norm is Norm.H:
        return _h_form(_stripped_triple(stripped, z, deriv), z, deriv)
    # f needs P' even for its value, through the log derivative
    count = deriv + 1 if norm is Norm.G else max(deriv, 1) + 1
    parts = [stripped(z * z, k) for k in range(count)]
    if norm is Norm.G:
        return _g_form(parts, z, deriv)
    if order == 0:
        raise DomainError("the f normalization is undefined for order 0")
    return _f_form(parts, z, deriv, order)


def _combine(value, pieces, parts) -> EvalResult:
    # first order error propagation through the linear combination
    error = sum(
        np.abs(weight) * part.abs_error_est
        for weight, part in zip(pieces, parts)
    )
    used = max(part.terms_used for part in parts)
    return EvalResult(value=value, abs_error_est=error, terms_used=used)


def _g_form(parts, z, deriv) -> EvalResult:
    if deriv == 0:
        return _combine(z * parts[0].value, [z], parts[:1])
    if deriv == 1:
        p0, p1 = parts[0].value, parts[1].value
        return _combine(p0 + 2 * z**2 * p1, [1, 2 * z**2], parts[:2])
    p1, p2 = parts[1].value, parts[2].value
    return _combine(6 * z * p1 + 4 * z**3 * p2, [0, 6 * z, 4 * z**3], parts)


def _h_form(parts, z, deriv) -> EvalResult:
    if deriv == 0:
        return _combine(z * parts[0].value, [z], parts[:1])
    if deriv == 1:
        p0, p1 = parts[0].value, parts[1].value
        return _combine(p0 + z * p1, [1, z], parts[:2])
    p1, p2 = parts[1].value, parts[2].value
    return _combine(2 * p1 + z * p2, [0, 2, z], parts)


def _f_form(parts, z, deriv, order) -> EvalResult:
    p0 = parts[0].value
    # log derivatives of P(z^2) with respect to z
    ell = parts[1].value / p0
    log1 = 2 * z * ell
    power = np.exp(np.log(p0 + 0j) / order)
    if np.isrealobj(z) and np.all(np.real(p0) > 0):
        power = power.real
    relative = sum(part.abs_error_est / np.abs(p0) for part in parts)
    if deriv == 0:
        value = z * power
    elif deriv == 1:
        value = power * (1 + z * log1 / order)
    else:
        m = parts[2].value / p0
        log2 = 2 * ell + 4 * z**2 * (m - ell**2)
        value = power * (
            2 * log1 / order + z * log1**2 / order**2 + z * log2 / order
        )
    return EvalResult(
        value=value,
        abs_error_est=np.abs(value) * relative,
        terms_used=max(part.terms_used for part in parts),
    )
