import logging

import pytest

from src.config import Settings, configure_logging, get_settings
from src.errors import ConfigurationError, OracleConfigError


def test_defaults(monkeypatch):
    for name in ("CURVE_ORACLE_SAMPLES", "CURVE_ROOT_TOL", "MAX_PROCESSING_THREADS", "CURVE_LOG_LEVEL"):
        monkeypatch.setenv(name, "")
    settings = get_settings()
    assert settings.oracle_samples == 4096
    assert settings.root_tol == 1e-12
    assert settings.max_workers == 4
    assert settings.log_level == "WARNING"


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("CURVE_ORACLE_SAMPLES", "2048")
    monkeypatch.setenv("CURVE_ORACLE_PAIR_TOL", "1e-7")
    monkeypatch.setenv("MAX_PROCESSING_THREADS", "2")
    monkeypatch.setenv("CURVE_LOG_LEVEL", "debug")
    settings = get_settings()
    assert settings.oracle_samples == 2048
    assert settings.log_level == "DEBUG"
    assert settings.report_db == str(tmp_path / "reports.db")
    cfg = settings.oracle_config()
    assert cfg.n_samples == 2048
    assert cfg.pair_tol == 1e-7
    assert cfg.max_workers == 2


def test_invalid_value(monkeypatch):
    monkeypatch.setenv("CURVE_ORACLE_SAMPLES", "many")
    with pytest.raises(ConfigurationError):
        get_settings()


def test_oracle_overrides():
    settings = Settings()
    assert settings.oracle_config(n_samples=None).n_samples == 4096
    assert settings.oracle_config(n_samples=512).n_samples == 512
    with pytest.raises(OracleConfigError):
        settings.oracle_config(n_samples=8)


def test_configure_logging():
    configure_logging("info")
    assert logging.getLogger().level == logging.INFO
    with pytest.raises(ConfigurationError):
        configure_logging("chatty")
    configure_logging("WARNING")
