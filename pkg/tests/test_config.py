import logging

import pytest

from biamalg.config import Settings, configure, get_settings, reset_settings


def test_defaults():
    settings = get_settings()
    assert settings == Settings()
    assert settings.max_order == 4096
    assert settings.workers == 1


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("BIAMALG_MAX_ORDER", "64")
    monkeypatch.setenv("BIAMALG_WORKERS", "4")
    reset_settings()
    settings = get_settings()
    assert settings.max_order == 64
    assert settings.workers == 4


@pytest.mark.parametrize("raw", ["abc", "0", "-5", "1.5"])
def test_invalid_environment_values_are_ignored(monkeypatch, caplog, raw):
    monkeypatch.setenv("BIAMALG_MAX_ORDER", raw)
    reset_settings()
    with caplog.at_level(logging.ERROR, logger="biamalg.config"):
        assert get_settings().max_order == 4096
    assert "BIAMALG_MAX_ORDER" in caplog.text


def test_configure_and_reset():
    updated = configure(workers=3, content_oracle_budget=10)
    assert updated is get_settings()
    assert get_settings().workers == 3
    assert get_settings().max_order == 4096
    reset_settings()
    assert get_settings().workers == 1
    with pytest.raises(TypeError):
        configure(no_such_setting=1)
