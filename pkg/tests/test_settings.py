import pytest

from lieimage import settings
from lieimage.constants import BUDGET_ENV_VAR, DEFAULT_BUDGET
from lieimage.paths import DEFAULTS_PATH
from lieimage.settings import Settings


def test_shipped_defaults_match_constants():
    shipped = Settings.load(DEFAULTS_PATH)
    defaults = Settings.with_defaults()
    for key_ in Settings.defaults():
        assert getattr(shipped, key_) == getattr(defaults, key_)
    assert shipped.budget == DEFAULT_BUDGET
    assert shipped.q_list == [3, 5, 7, 9, 11, 13]


def test_missing_and_unknown_keys(tmp_path):
    path = tmp_path / "custom.toml"
    path.write_text("[lieimage]\nbudget = 5000\nunknown = 1\n")
    loaded = Settings.load(path)
    assert loaded.budget == 5000
    assert loaded.genset_qmax == 13
    assert not hasattr(loaded, "unknown")


def test_top_level_table(tmp_path):
    path = tmp_path / "flat.toml"
    path.write_text("jobs = 3\n")
    assert Settings.load(path).jobs == 3


def test_setters_clamp():
    loaded = Settings.with_defaults()
    loaded.update(jobs=0, budget=-4, chunk_size=1, genset_qmax=1)
    assert loaded.jobs == 1
    assert loaded.budget == 1
    assert loaded.chunk_size == 1024
    assert loaded.genset_qmax == 3


def test_environment_budget(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "1234")
    assert Settings.load().budget == 1234
    assert Settings.load(DEFAULTS_PATH).budget == 1234


def test_environment_budget_not_an_integer(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "lots")
    with pytest.raises(ValueError):
        Settings.load()


def test_current_is_cached_until_replaced():
    first = settings.current()
    assert settings.current() is first
    replacement = Settings.with_defaults()
    settings.use(replacement)
    assert settings.current() is replacement
    settings.use(None)
    assert settings.current() is not replacement
