"""
Configuration
Built-in defaults, config.yaml loading and logging setup
"""

import copy
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import yaml

from .errors import ConfigError

logger = logging.getLogger(__name__)

CAP_ENV = "OCTA_SEARCH_CAP"

DEFAULT_CONFIG = {
    "search": {
        "cap": 64,
        "retry_cap": 16,
        "t1": "1/2",
        "delta": "1/2",
        "epsilon": "1/2",
        "schlegel_lambda": "1/2",
        "schlegel_mu": "1/4",
    },
    "verification": {
        "level": "fast",
        "bipyramid_level": "full",
    },
    "threading": {
        "enabled": False,
        "num_workers": 1,
    },
    "logging": {
        "level": "WARNING",
        "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        "file": None,
        "console": True,
    },
}

LEVELS = ("fast", "full")


def _merge(base, override):
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value
    return base


def load_config(path=None):
    """
    Load configuration merged over the built-in defaults

    Args:
        path: YAML file; None or a missing file means defaults only

    Returns:
        dict with sections search, verification, threading, logging
    """
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        path = Path(path)
        if path.exists():
            try:
                with open(path, encoding="utf-8") as f:
                    data = yaml.safe_load(f) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
            if not isinstance(data, dict):
                raise ConfigError(f"{path}: top level must be a mapping")
            _merge(cfg, data)
        else:
            logger.debug("config file %s not found, using defaults", path)

    override = os.environ.get(CAP_ENV)
    if override:
        try:
            cfg["search"]["cap"] = int(override)
        except ValueError as exc:
            raise ConfigError(f"{CAP_ENV} must be an integer, got {override!r}") from exc
    return cfg


def _rational(value, key):
    if isinstance(value, bool):
        raise ConfigError(f"{key} must be a rational number, got {value!r}")
    try:
        q = Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{key} must be a rational number, got {value!r}") from exc
    if not 0 < q < 1:
        raise ConfigError(f"{key} must lie strictly between 0 and 1, got {q}")
    return q


def _positive_int(value, key):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f"{key} must be a positive integer, got {value!r}")
    return value


@dataclass(frozen=True)
class SearchSettings:
    """Typed view of the search/verification/threading sections"""

    cap: int = 64
    retry_cap: int = 16
    t1: Fraction = Fraction(1, 2)
    delta: Fraction = Fraction(1, 2)
    epsilon: Fraction = Fraction(1, 2)
    schlegel_lambda: Fraction = Fraction(1, 2)
    schlegel_mu: Fraction = Fraction(1, 4)
    bipyramid_level: str = "full"
    num_workers: int = 1

    @classmethod
    def from_config(cls, cfg):
        search = cfg.get("search", {})
        verification = cfg.get("verification", {})
        threading = cfg.get("threading", {})
        level = verification.get("bipyramid_level", "full")
        if level not in LEVELS:
            raise ConfigError(f"verification.bipyramid_level must be one of {LEVELS}, got {level!r}")
        workers = 1
        if threading.get("enabled"):
            workers = _positive_int(threading.get("num_workers", 1), "threading.num_workers")
        return cls(
            cap=_positive_int(search.get("cap", 64), "search.cap"),
            retry_cap=_positive_int(search.get("retry_cap", 16), "search.retry_cap"),
            t1=_rational(search.get("t1", "1/2"), "search.t1"),
            delta=_rational(search.get("delta", "1/2"), "search.delta"),
            epsilon=_rational(search.get("epsilon", "1/2"), "search.epsilon"),
            schlegel_lambda=_rational(search.get("schlegel_lambda", "1/2"), "search.schlegel_lambda"),
            schlegel_mu=_rational(search.get("schlegel_mu", "1/4"), "search.schlegel_mu"),
            bipyramid_level=level,
            num_workers=workers,
        )


def default_settings():
    """Defaults plus the OCTA_SEARCH_CAP override"""
    return SearchSettings.from_config(load_config())


def verification_level(cfg):
    level = cfg.get("verification", {}).get("level", "fast")
    if level not in LEVELS:
        raise ConfigError(f"verification.level must be one of {LEVELS}, got {level!r}")
    return level


def setup_logging(cfg=None, level=None):
    """
    Install console/file handlers on the package logger

    Args:
        cfg: loaded configuration (defaults when None)
        level: optional level name overriding the configured one
    """
    log_cfg = (cfg or DEFAULT_CONFIG).get("logging", {})
    name = str(level or log_cfg.get("level", "WARNING")).upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise ConfigError(f"logging.level is not a logging level: {name!r}")

    package_logger = logging.getLogger("octa")
    package_logger.setLevel(numeric)
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(log_cfg.get("format", DEFAULT_CONFIG["logging"]["format"]))
    if log_cfg.get("console", True):
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(formatter)
        package_logger.addHandler(console)
    if log_cfg.get("file"):
        log_path = Path(log_cfg["file"])
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path, encoding="utf-8")
        file_handler.setFormatter(formatter)
        package_logger.addHandler(file_handler)
    return package_logger
