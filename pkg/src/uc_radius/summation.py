"""
Compensated summation of power series with a certified truncation error
"""

from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np

from .exceptions import NonConvergenceError

EPS = np.finfo(float).eps

Number = Union[float, complex, np.ndarray]


@dataclass(frozen=True)
class EvalResult:
    """
    A series value together with its accuracy certificate
    """

    value: Number
    "the value, scalar or array shaped like the argument"
    abs_error_est: Number
    "bound on the discarded tail plus accumulated rounding"
    terms_used: int
    "number of series terms summed"

    def to_dict(self) -> dict:
        return {
            "value": _jsonable(self.value),
            "abs_error_est": _jsonable(self.abs_error_est),
            "terms_used": self.terms_used,
        }


def _jsonable(value):
    value = np.asarray(value)
    if value.ndim:
        return [_jsonable(v) for v in value]
    value = value.item()
    if isinstance(value, complex):
        if value.imag == 0:
            return value.real
        return {"real": value.real, "imag": value.imag}
    return float(value)


def as_argument(z) -> Tuple[np.ndarray, bool]:
    """
    Converts z to an array and reports whether it was a scalar
    """
    array = np.asarray(z)
    if array.dtype.kind not in "fc":
        array = array.astype(float)
    return array, array.ndim == 0


def unwrap(value, scalar: bool):
    """
    Returns a python scalar when the argument was a scalar
    """
    if scalar:
        return np.asarray(value).item()
    return value


def _two_sum(total: np.ndarray, value: np.ndarray):
    # Neumaier's error free transformation, elementwise
    new_total = total + value
    error = np.where(
        np.abs(total) >= np.abs(value),
        (total - new_total) + value,
        (value - new_total) + total,
    )
    return new_total, error


class CompensatedSum:
    """
    Running sum that carries the rounding error of every addition

    Real and imaginary parts are compensated separately.
    """

    def __init__(self, shape=(), dtype=float):
        self._complex = np.dtype(dtype).kind == "c"
        self._real = np.zeros(shape)
        self._real_carry = np.zeros(shape)
        self._imag = np.zeros(shape)
        self._imag_carry = np.zeros(shape)
        self.abs_sum = np.zeros(shape)
        self.count = 0

    def add(self, value):
        value = np.asarray(value)
        self._real, error = _two_sum(self._real, np.real(value))
        self._real_carry = self._real_carry + error
        if self._complex:
            self._imag, error = _two_sum(self._imag, np.imag(value))
            self._imag_carry = self._imag_carry + error
        self.abs_sum = self.abs_sum + np.abs(value)
        self.count += 1

    @property
    def total(self) -> np.ndarray:
        real = self._real + self._real_carry
        if not self._complex:
            return real
        return real + 1j * (self._imag + self._imag_carry)

    @property
    def rounding_bound(self) -> np.ndarray:
        """
        Error bound of the compensated sum
        """
        return 2 * EPS * np.abs(self.total) + (
            self.count * EPS**2 * self.abs_sum
        )


def sum_series(
    term: Callable[[int], np.ndarray],
    ratio_bound: Callable[[int], float],
    shape,
    dtype,
    decay: float,
    rtol: float,
    max_terms: int,
) -> EvalResult:
    """
    Sums term(0) + term(1) + ... until the tail is certified small

    ratio_bound(n) must bound |term(n + 1)| / |term(n)| for every element
    and be non increasing from the first n where it falls below decay.
    Stops once the last term is below rtol times the partial sum and the
    ratio bound is below decay; the discarded tail is then bounded by the
    geometric series started at the first omitted term.
    """
    accumulator = CompensatedSum(shape, dtype)
    for n in range(max_terms):
        current = term(n)
        accumulator.add(current)
        rho = ratio_bound(n)
        if rho > decay:
            continue
        magnitude = np.abs(current)
        if np.all(magnitude <= rtol * np.abs(accumulator.total)):
            tail = magnitude * rho / (1 - rho)
            return EvalResult(
                value=accumulator.total,
                abs_error_est=tail + accumulator.rounding_bound,
                terms_used=n + 1,
            )
    raise NonConvergenceError(
        f"series did not converge within {max_terms} terms"
    )


def falling_factorial(x: float, k: int) -> float:
    """
    x (x - 1) ... (x - k + 1)
    """
    out = 1.0
    for i in range(k):
        out *= x - i
    return out
