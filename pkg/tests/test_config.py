"""Tests for configuration loading and logging setup."""

import logging
from fractions import Fraction

import pytest

from octa.config import (
    CAP_ENV,
    DEFAULT_CONFIG,
    SearchSettings,
    default_settings,
    load_config,
    setup_logging,
    verification_level,
)
from octa.errors import ConfigError


@pytest.fixture(autouse=True)
def no_cap_override(monkeypatch):
    monkeypatch.delenv(CAP_ENV, raising=False)


def test_defaults_without_file(tmp_path):
    assert load_config() == DEFAULT_CONFIG
    assert load_config(tmp_path / "missing.yaml") == DEFAULT_CONFIG
    assert default_settings() == SearchSettings()


def test_repository_config_matches_defaults(data_dir):
    cfg = load_config(data_dir.parent / "config.yaml")
    assert SearchSettings.from_config(cfg) == SearchSettings()
    assert verification_level(cfg) == "fast"


def test_yaml_overrides_are_merged(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text('search:\n  cap: 10\n  t1: "1/3"\nverification:\n  level: full\n')
    cfg = load_config(path)
    assert cfg["search"]["retry_cap"] == 16
    settings = SearchSettings.from_config(cfg)
    assert settings.cap == 10
    assert settings.t1 == Fraction(1, 3)
    assert settings.delta == Fraction(1, 2)
    assert verification_level(cfg) == "full"


def test_env_overrides_cap(monkeypatch):
    monkeypatch.setenv(CAP_ENV, "5")
    assert default_settings().cap == 5
    monkeypatch.setenv(CAP_ENV, "many")
    with pytest.raises(ConfigError):
        load_config()


@pytest.mark.parametrize("content", ["search: [1, 2\n", "- a\n- b\n"])
def test_bad_yaml(tmp_path, content):
    path = tmp_path / "bad.yaml"
    path.write_text(content)
    with pytest.raises(ConfigError):
        load_config(path)


@pytest.mark.parametrize(
    "section, key, value",
    [
        ("search", "t1", "3/2"),
        ("search", "delta", 0),
        ("search", "epsilon", True),
        ("search", "epsilon", "half"),
        ("search", "cap", 0),
        ("search", "retry_cap", "16"),
        ("verification", "bipyramid_level", "thorough"),
    ],
)
def test_invalid_values(section, key, value):
    cfg = load_config()
    cfg[section][key] = value
    with pytest.raises(ConfigError, match=key):
        SearchSettings.from_config(cfg)


def test_workers_only_when_threading_enabled():
    cfg = load_config()
    cfg["threading"]["num_workers"] = 3
    assert SearchSettings.from_config(cfg).num_workers == 1
    cfg["threading"]["enabled"] = True
    assert SearchSettings.from_config(cfg).num_workers == 3


def test_verification_level_rejects_unknown():
    with pytest.raises(ConfigError):
        verification_level({"verification": {"level": "paranoid"}})


def test_setup_logging(tmp_path):
    cfg = load_config()
    cfg["logging"]["file"] = str(tmp_path / "logs" / "octa.log")
    logger = setup_logging(cfg, level="debug")
    assert logger.name == "octa"
    assert logger.level == logging.DEBUG
    assert len(logger.handlers) == 2
    logging.getLogger("octa.subdivide").debug("hello")
    for handler in logger.handlers:
        handler.flush()
    assert "hello" in (tmp_path / "logs" / "octa.log").read_text()
    setup_logging()
    assert len(logging.getLogger("octa").handlers) == 1


def test_setup_logging_rejects_unknown_level():
    with pytest.raises(ConfigError):
        setup_logging(level="chatty")
