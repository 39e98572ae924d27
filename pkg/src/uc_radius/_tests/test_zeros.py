"""
tests zero localization, Rayleigh sums, interlacing and the zero cache
"""

import json

import numpy as np
import pytest

from uc_radius import zeros as zr
from uc_radius._tests.grids import INTERLACING_GRID, WRIGHT_GRID, grid_id
from uc_radius.exceptions import DomainError, ScanExhaustedError
from uc_radius.params import BesselParams, Kind, QBesselParams, WrightParams
from uc_radius.qseries import jackson_qbessel, stripped_qbessel
from uc_radius.wright import stripped_wright
from uc_radius.zeros import ZeroKind, ZeroTable, ZeroTarget, scan_and_refine

J01 = 2.404825557695773
J02 = 5.520078110286311


def test_classical_bessel_zeros():
    table = scan_and_refine(ZeroTarget(BesselParams(0), ZeroKind.FUNCTION), 2)
    assert table.zeros[0] == pytest.approx(J01, abs=1e-10)
    assert table.zeros[1] == pytest.approx(J02, abs=1e-10)
    for lo, hi in table.brackets:
        assert hi - lo <= 1e-13 * lo * 1.0000001


def test_qbessel_zeros_are_zeros():
    params = QBesselParams(Kind.JACKSON2, 1, 0.5)
    table = scan_and_refine(ZeroTarget(params, ZeroKind.FUNCTION), 3)
    assert list(table.zeros) == sorted(table.zeros)
    assert table.zeros[0] > 0
    for zero in table.zeros:
        assert abs(jackson_qbessel(params, zero).value) < 1e-10
    assert max(table.residuals) < 1e-10


def test_alpha_zeros():
    params = QBesselParams(Kind.JACKSON2, 1.5, 0.5)
    table = scan_and_refine(ZeroTarget(params, ZeroKind.ALPHA), 2)
    for zero in table.zeros:
        value, first = (
            jackson_qbessel(params, zero, k).value for k in range(2)
        )
        combined = zero * first + (1 - params.nu) * value
        assert abs(combined) < 1e-10


def test_h_prime_zeros_are_not_squared():
    params = WrightParams(1.0, 1.0)
    table = scan_and_refine(ZeroTarget(params, ZeroKind.H_PRIME), 2)
    assert not table.target.even
    np.testing.assert_array_equal(table.pole_values(), table.zeros)


def test_rayleigh_sums_bessel():
    sigma1, sigma2 = zr.rayleigh_sums(
        ZeroTarget(BesselParams(0), ZeroKind.FUNCTION), 2
    )
    assert sigma1 == pytest.approx(0.25, rel=1e-14)
    assert sigma2 == pytest.approx(1 / 32, rel=1e-14)


def test_rayleigh_lower_bound():
    target = ZeroTarget(QBesselParams(Kind.JACKSON3, 0.5, 0.3), "delta")
    (sigma1,) = zr.rayleigh_sums(target, 1)
    table = scan_and_refine(target, 1)
    assert table.pole_values()[0] >= 1 / sigma1
    with pytest.raises(DomainError):
        zr.rayleigh_sums(target, 0)


@pytest.mark.parametrize(
    "params,first,second",
    [
        (
            QBesselParams(Kind.JACKSON2, 1, 0.5),
            ZeroKind.DERIVATIVE,
            ZeroKind.FUNCTION,
        ),
        (
            QBesselParams(Kind.JACKSON3, 2, 0.4),
            ZeroKind.DERIVATIVE,
            ZeroKind.FUNCTION,
        ),
        (WrightParams(1.0, 2.0), ZeroKind.PSI_PRIME, ZeroKind.FUNCTION),
        (WrightParams(0.5, 1.0), ZeroKind.PSI_PRIME, ZeroKind.FUNCTION),
    ],
)
def test_interlacing(params, first, second):
    a = scan_and_refine(ZeroTarget(params, first), 6)
    b = scan_and_refine(ZeroTarget(params, second), 5)
    report = zr.interlacing_check(a, b)
    assert report.passed
    assert len(report.pairs) == 10


@pytest.mark.slow
@pytest.mark.parametrize("params", INTERLACING_GRID, ids=grid_id)
def test_qbessel_interlacing_over_grid(params):
    derivative = scan_and_refine(ZeroTarget(params, ZeroKind.DERIVATIVE), 6)
    function = scan_and_refine(ZeroTarget(params, ZeroKind.FUNCTION), 5)
    assert zr.interlacing_check(derivative, function).passed
    assert max(derivative.residuals + function.residuals) < 1e-10


@pytest.mark.slow
@pytest.mark.parametrize("params", WRIGHT_GRID, ids=grid_id)
def test_wright_chain_over_grid(params):
    derivative = scan_and_refine(ZeroTarget(params, ZeroKind.PSI_PRIME), 3)
    function = scan_and_refine(ZeroTarget(params, ZeroKind.FUNCTION), 2)
    report = zr.interlacing_check(derivative, function)
    assert report.passed
    assert len(report.pairs) == 4
    assert max(derivative.residuals + function.residuals) < 1e-10


def test_interlacing_detects_failure():
    table = scan_and_refine(ZeroTarget(BesselParams(1), ZeroKind.FUNCTION), 3)
    report = zr.interlacing_check(table, table)
    assert not report.passed
    assert report.to_dict()["passed"] is False


def test_interlacing_needs_same_params():
    a = scan_and_refine(ZeroTarget(BesselParams(1), ZeroKind.FUNCTION), 1)
    b = scan_and_refine(ZeroTarget(BesselParams(2), ZeroKind.FUNCTION), 1)
    with pytest.raises(ValueError):
        zr.interlacing_check(a, b)


def test_first_zero_grows_with_order():
    firsts = [
        scan_and_refine(
            ZeroTarget(QBesselParams(Kind.JACKSON2, nu, 0.5), "function"), 1
        ).zeros[0]
        for nu in (0.5, 1.0, 2.0)
    ]
    assert firsts == sorted(firsts)
    assert firsts[0] < firsts[-1]


def test_hadamard_product_qbessel():
    params = QBesselParams(Kind.JACKSON2, 1, 0.5)
    table = scan_and_refine(ZeroTarget(params, ZeroKind.FUNCTION), 20)
    for z in (0.5, 1.0, 2.0):
        exact = stripped_qbessel(params, z * z).value
        assert abs(zr.truncated_product(table, z) - exact) < 1e-4


def test_hadamard_product_wright_improves():
    params = WrightParams(1.0, 2.0)
    table = scan_and_refine(ZeroTarget(params, ZeroKind.FUNCTION), 20)
    z = 1.0
    exact = stripped_wright(params, z * z).value
    errors = [
        abs(zr.truncated_product(table.head(n), z) - exact)
        for n in (5, 10, 20)
    ]
    assert errors[0] > errors[1] > errors[2]


def test_table_round_trip():
    table = scan_and_refine(
        ZeroTarget(QBesselParams(Kind.JACKSON3, 1, 0.5), "gamma"), 3
    )
    data = json.loads(json.dumps(table.to_dict()))
    assert ZeroTable.from_dict(data) == table
    assert len(table.head(2)) == 2
    with pytest.raises(ValueError):
        table.head(4)


def test_scan_exhausted():
    target = ZeroTarget(BesselParams(0), ZeroKind.FUNCTION)
    with pytest.raises(ScanExhaustedError):
        scan_and_refine(target, 2, upper_bound=2.0, max_extensions=0)


def test_scan_extends_upper_bound():
    target = ZeroTarget(BesselParams(0), ZeroKind.FUNCTION)
    table = scan_and_refine(target, 2, upper_bound=2.0, max_extensions=2)
    assert table.zeros[1] == pytest.approx(J02, abs=1e-10)


@pytest.mark.parametrize(
    "params,which",
    [
        (QBesselParams(Kind.JACKSON2, 1, 0.5), ZeroKind.GAMMA),
        (QBesselParams(Kind.JACKSON3, 1, 0.5), ZeroKind.BETA),
        (QBesselParams(Kind.JACKSON2, 0, 0.5), ZeroKind.DERIVATIVE),
        (QBesselParams(Kind.JACKSON2, 1, 0.5), ZeroKind.PSI_PRIME),
        (WrightParams(0.0, 1.0), ZeroKind.FUNCTION),
        (WrightParams(1.0, 1.0), ZeroKind.ALPHA),
    ],
)
def test_undefined_targets(params, which):
    with pytest.raises(DomainError):
        ZeroTarget(params, which)


def test_count_must_be_positive():
    with pytest.raises(DomainError):
        scan_and_refine(ZeroTarget(BesselParams(0), "function"), 0)


def test_target_descriptor_round_trip():
    target = ZeroTarget(WrightParams(0.5, 1.5), ZeroKind.G_PRIME)
    assert target.descriptor() == {
        "family": "wright",
        "rho": 0.5,
        "beta": 1.5,
        "which": "g_prime",
    }
    assert ZeroTarget.from_descriptor(target.descriptor()) == target


def test_cache_fills_and_reuses(tmp_path, monkeypatch):
    cache = zr.ZeroCache(tmp_path)
    source = cache.source()
    target = ZeroTarget(BesselParams(1), ZeroKind.FUNCTION)
    table = source(target, 3)
    assert len(list(tmp_path.glob("*.json"))) == 1
    assert not list(tmp_path.glob("*.tmp"))

    def fail(*args, **kwargs):
        raise AssertionError("cache miss")

    monkeypatch.setattr(zr, "scan_and_refine", fail)
    assert source(target, 2) == table.head(2)
    assert source(target, 3) == table
    with pytest.raises(AssertionError):
        source(target, 4)


def test_cache_keeps_longer_table(tmp_path):
    cache = zr.ZeroCache(tmp_path)
    target = ZeroTarget(BesselParams(1), ZeroKind.FUNCTION)
    table = scan_and_refine(target, 3)
    cache.store(table)
    cache.store(table.head(1))
    assert cache.load(target, 3, table.tol) == table
    assert cache.load(target, 4, table.tol) is None
    assert cache.load(target, 3, 1e-6) is None


def test_compute_source_extends_tables(monkeypatch):
    calls = []
    scan = zr.scan_and_refine

    def counting(target, count, **kwargs):
        calls.append((count, kwargs.get("resume")))
        return scan(target, count, **kwargs)

    monkeypatch.setattr(zr, "scan_and_refine", counting)
    source = zr.compute_source()
    target = ZeroTarget(BesselParams(1), ZeroKind.FUNCTION)
    short = source(target, 2)
    longer = source(target, 4)
    assert longer.zeros[:2] == short.zeros
    assert source(target, 3) == longer.head(3)
    assert [count for count, _ in calls] == [2, 4]
    assert calls[1][1] == short


def test_resumed_scan_matches_fresh_scan():
    target = ZeroTarget(QBesselParams(Kind.JACKSON3, 1.0, 0.5), "gamma")
    fresh = scan_and_refine(target, 6)
    resumed = scan_and_refine(target, 6, resume=scan_and_refine(target, 2))
    np.testing.assert_allclose(resumed.zeros, fresh.zeros, rtol=1e-12)
    for zero, (lo, hi) in zip(resumed.zeros, resumed.brackets):
        assert lo <= zero <= hi
        assert hi - lo <= 1e-13 * lo
    assert scan_and_refine(target, 3, resume=fresh) == fresh.head(3)
    with pytest.raises(ValueError):
        scan_and_refine(target, 6, tol=1e-8, resume=fresh.head(2))


def test_cache_extends_short_table(tmp_path):
    cache = zr.ZeroCache(tmp_path)
    target = ZeroTarget(BesselParams(0), ZeroKind.FUNCTION)
    cache.store(scan_and_refine(target, 1))
    table = cache.source()(target, 3)
    assert len(cache.read(target, table.tol)) == 3
    assert table.zeros[1] == pytest.approx(J02, abs=1e-10)
