"""Runtime settings read from the environment (and an optional ``.env`` file)."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, TypeVar

from dotenv import load_dotenv

from .errors import ConfigurationError

T = TypeVar("T")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _env(name: str, default: T, cast: Callable[[str], T]) -> T:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError as e:
        raise ConfigurationError(f"Environment variable {name}={raw!r} is not valid: {e}") from e


@dataclass(frozen=True)
class Settings:
    oracle_samples: int = 4096
    pair_tol: float = 1e-6
    refine_tol: float = 1e-11
    dedupe_radius: float = 1e-7
    min_param_gap: float = 1e-4
    root_tol: float = 1e-12
    plot_samples: int = 4096
    max_workers: int = 4
    report_db: str = "curve_reports.db"
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv()
        return cls(
            oracle_samples=_env("CURVE_ORACLE_SAMPLES", 4096, int),
            pair_tol=_env("CURVE_ORACLE_PAIR_TOL", 1e-6, float),
            refine_tol=_env("CURVE_ORACLE_REFINE_TOL", 1e-11, float),
            dedupe_radius=_env("CURVE_ORACLE_DEDUPE", 1e-7, float),
            min_param_gap=_env("CURVE_ORACLE_MIN_GAP", 1e-4, float),
            root_tol=_env("CURVE_ROOT_TOL", 1e-12, float),
            plot_samples=_env("CURVE_PLOT_SAMPLES", 4096, int),
            max_workers=_env("MAX_PROCESSING_THREADS", 4, int),
            report_db=_env("CURVE_REPORT_DB", "curve_reports.db", str),
            log_level=_env("CURVE_LOG_LEVEL", "WARNING", str).upper(),
        )

    def oracle_config(self, **overrides):
        # imported here: oracle pulls numpy/scipy, config stays light
        from .oracle import OracleConfig

        values = dict(
            n_samples=self.oracle_samples,
            pair_tol=self.pair_tol,
            refine_tol=self.refine_tol,
            dedupe_radius=self.dedupe_radius,
            min_param_gap=self.min_param_gap,
            max_workers=self.max_workers,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return OracleConfig(**values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()


def configure_logging(level: str | None = None) -> None:
    level_name = (level or get_settings().log_level).upper()
    numeric = logging.getLevelName(level_name)
    if not isinstance(numeric, int):
        raise ConfigurationError(f"Unknown log level: {level_name}")
    logging.basicConfig(level=numeric, format=LOG_FORMAT)
    logging.getLogger().setLevel(numeric)
