"""
tests the Wright function, lambda, Psi and the Wright normalizations
"""

import math

import mpmath
import numpy as np
import pytest

from uc_radius import wright as wr
from uc_radius.exceptions import DomainError
from uc_radius.limits import wright_bessel_table
from uc_radius.params import Norm, WrightParams
from uc_radius.radius import ZeroSum
from uc_radius.zeros import ZeroKind, ZeroTarget, scan_and_refine

J11 = 3.8317059702075125


def reference_phi(rho, beta, z, terms=80):
    with mpmath.workdps(40):
        z = mpmath.mpf(z)
        return float(
            sum(
                z**n * mpmath.rgamma(n * rho + beta) / mpmath.factorial(n)
                for n in range(terms)
            )
        )


def test_phi_at_origin():
    params = WrightParams(0.5, 2.0)
    assert wr.wright_phi(params, 0.0).value == pytest.approx(1 / math.gamma(2))
    assert wr.wright_phi(params, 0.0, 1).value == pytest.approx(
        1 / math.gamma(2.5)
    )


@pytest.mark.parametrize("rho,beta", [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5)])
@pytest.mark.parametrize("z", [-4.0, -0.7, 1.3])
def test_phi_against_reference(rho, beta, z):
    out = wr.wright_phi(WrightParams(rho, beta), z)
    assert out.value == pytest.approx(
        reference_phi(rho, beta, z), rel=1e-12, abs=1e-14
    )


def test_phi_derivative_by_finite_difference():
    params = WrightParams(0.8, 1.5)
    step = 1e-4
    for z in (-3.0, -1.0, 0.5):
        plus = wr.wright_phi(params, z + step).value
        minus = wr.wright_phi(params, z - step).value
        first = wr.wright_phi(params, z, 1).value
        assert (plus - minus) / (2 * step) == pytest.approx(first, abs=1e-7)


def test_bessel_identity():
    table = wright_bessel_table()
    assert set(table["nu"]) == {0.0, 0.5, 1.0}
    assert len(table) == 150
    assert table["abs_error"].max() < 1e-10


def test_lambda():
    params = WrightParams(1.0, 2.0)
    assert wr.lambda_func(params, 0.0).value == pytest.approx(1.0)
    z = 0.9
    assert wr.lambda_func(params, z).value == pytest.approx(
        reference_phi(1.0, 2.0, -(z**2)), rel=1e-13
    )
    assert wr.lambda_func(params, -z).value == pytest.approx(
        wr.lambda_func(params, z).value, rel=1e-15
    )
    assert wr.lambda_func(params, -z, 1).value == pytest.approx(
        -wr.lambda_func(params, z, 1).value, rel=1e-15
    )


def test_lambda_derivatives_by_finite_difference():
    params = WrightParams(0.5, 1.5)
    step = 1e-4
    for z in (0.4, 1.7):
        plus = wr.lambda_func(params, z + step).value
        minus = wr.lambda_func(params, z - step).value
        first = wr.lambda_func(params, z, 1).value
        assert (plus - minus) / (2 * step) == pytest.approx(first, abs=1e-7)
        plus = wr.lambda_func(params, z + step, 1).value
        minus = wr.lambda_func(params, z - step, 1).value
        second = wr.lambda_func(params, z, 2).value
        assert (plus - minus) / (2 * step) == pytest.approx(second, abs=1e-7)


def test_psi():
    params = WrightParams(1.0, 2.0)
    z = 0.6
    assert wr.psi_func(params, z).value == pytest.approx(
        z**2 * wr.lambda_func(params, z).value, rel=1e-15
    )
    step = 1e-4
    for k in (0, 1):
        plus = wr.psi_func(params, z + step, k).value
        minus = wr.psi_func(params, z - step, k).value
        derivative = wr.psi_func(params, z, k + 1).value
        assert (plus - minus) / (2 * step) == pytest.approx(
            derivative, abs=1e-7
        )


def test_psi_rejects_non_positive():
    params = WrightParams(1.0, 2.0)
    with pytest.raises(DomainError):
        wr.psi_func(params, 0.0)
    with pytest.raises(DomainError):
        wr.psi_func(params, 0.5 + 0.1j)


def test_rho_domain():
    with pytest.raises(DomainError):
        WrightParams(-1.0, 1.0)
    with pytest.raises(DomainError):
        WrightParams(0.0, 1.0).require_radius_domain()
    with pytest.raises(DomainError):
        wr.normalized_wright(WrightParams(1.0, -0.5), Norm.G, 0.3)


@pytest.mark.parametrize("norm", [Norm.F, Norm.G, Norm.H])
def test_normalized_near_origin(norm):
    params = WrightParams(0.5, 1.5)
    z = 1e-6
    assert abs(wr.normalized_wright(params, norm, z).value / z - 1) < 1e-5
    first = wr.normalized_wright(params, norm, 0.0, 1).value
    assert first == pytest.approx(1.0, abs=1e-15)


def test_normalized_against_reference():
    rho, beta, z = 0.5, 1.5, 0.8
    params = WrightParams(rho, beta)
    scale = math.gamma(beta)
    g = wr.normalized_wright(params, Norm.G, z).value
    assert g == pytest.approx(
        z * scale * reference_phi(rho, beta, -(z**2)), rel=1e-12
    )
    h = wr.normalized_wright(params, Norm.H, z).value
    assert h == pytest.approx(
        z * scale * reference_phi(rho, beta, -z), rel=1e-12
    )
    f = wr.normalized_wright(params, Norm.F, z).value
    psi = z**beta * reference_phi(rho, beta, -(z**2))
    assert f == pytest.approx((scale * psi) ** (1 / beta), rel=1e-12)


def test_ratio_at_origin():
    params = WrightParams(1.0, 2.0)
    for norm in Norm:
        assert wr.ratio_one_plus_zfpp_fp_wright(params, norm, 0.0) == 1


def test_ratio_vectorised():
    params = WrightParams(1.0, 2.0)
    grid = np.array([0.0, 0.2, 0.5])
    out = wr.ratio_one_plus_zfpp_fp_wright(params, Norm.G, grid)
    assert out[0] == 1
    for z, value in zip(grid[1:], out[1:]):
        assert value == pytest.approx(
            wr.ratio_one_plus_zfpp_fp_wright(params, Norm.G, z)
        )


def test_first_zero_is_bessel():
    # phi(1, 2, -z^2) = J_1(2 z) / z
    table = scan_and_refine(
        ZeroTarget(WrightParams(1.0, 2.0), ZeroKind.FUNCTION), 1
    )
    assert table.zeros[0] == pytest.approx(J11 / 2, rel=1e-12)


def test_f_ratio_matches_zero_sums():
    params = WrightParams(1.0, 2.0)
    beta = params.beta
    z = 0.3
    w = z * z
    function = ZeroSum(
        scan_and_refine(ZeroTarget(params, ZeroKind.FUNCTION), 30), 3
    )
    derivative = ZeroSum(
        scan_and_refine(ZeroTarget(params, ZeroKind.PSI_PRIME), 30), 3
    )
    expected = 1 - 2 * (1 / beta - 1) * function(w) - 2 * derivative(w)
    out = wr.ratio_one_plus_zfpp_fp_wright(params, Norm.F, z)
    assert out == pytest.approx(expected, abs=1e-8)
