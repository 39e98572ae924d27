"""
tests numerical settings and their defaults
"""

from pathlib import Path

import pytest

from uc_radius import config as cf


def test_all_defaults():
    out = cf.resolve_config()
    assert out.zero_count == cf.DEFAULT_ZERO_COUNT
    assert out.series_rtol == cf.DEFAULT_SERIES_RTOL
    assert out.oracle_samples == cf.DEFAULT_ORACLE_SAMPLES
    assert out.scan_growth == cf.DEFAULT_SCAN_GROWTH


def test_override_keeps_other_defaults():
    out = cf.resolve_config(cf.NumericsConfig(zero_count=10, root_rtol=1e-9))
    assert out.zero_count == 10
    assert out.root_rtol == 1e-9
    assert out.max_zero_count == cf.DEFAULT_MAX_ZERO_COUNT


def test_every_field_has_a_default():
    names = set(cf.NumericsConfig.__dataclass_fields__) - {"cache_dir"}
    assert names == set(cf.DEFAULTS)


@pytest.mark.parametrize(
    "settings",
    [
        {"zero_tol": -1.0},
        {"scan_growth": 1.0},
        {"oracle_samples": 10},
        {"zero_count": 300},
        {"oracle_domain_fraction": 1.0},
        {"rayleigh_terms": -1},
    ],
)
def test_bad_settings(settings):
    with pytest.raises(ValueError):
        cf.resolve_config(cf.NumericsConfig(**settings))


def test_zero_rayleigh_terms_allowed():
    out = cf.resolve_config(cf.NumericsConfig(rayleigh_terms=0))
    assert out.rayleigh_terms == 0


def test_cache_dir_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(cf.CACHE_ENV_VAR, str(tmp_path))
    assert cf.resolve_config().cache_dir == tmp_path


def test_cache_dir_field_wins(monkeypatch, tmp_path):
    monkeypatch.setenv(cf.CACHE_ENV_VAR, str(tmp_path / "env"))
    out = cf.resolve_config(cf.NumericsConfig(cache_dir=str(tmp_path)))
    assert out.cache_dir == tmp_path


def test_default_cache_dir(monkeypatch):
    monkeypatch.delenv(cf.CACHE_ENV_VAR, raising=False)
    assert cf.default_cache_dir() == Path.home() / ".cache" / "uc-radius"
