"""Tests for config.py: defaults and environment overrides."""

import pytest


class TestSettingsDefaults:
    """Tests for the values Settings uses when nothing is set."""

    @pytest.mark.unit
    def test_defaults(self, monkeypatch):
        """Seed 0, Buchberger and four concurrent checks."""
        from hkq.config import Settings

        monkeypatch.delenv("HKQ_SEED", raising=False)
        s = Settings(_env_file=None)
        assert s.hkq_seed == 0
        assert s.groebner_method == "buchberger"
        assert s.max_concurrency == 4
        assert s.log_file is None


class TestEnvironmentOverrides:
    """Tests for HKQ_* and other environment variables."""

    @pytest.mark.unit
    def test_seed_from_environment(self, monkeypatch):
        """HKQ_SEED becomes the default seed."""
        from hkq.config import Settings

        monkeypatch.setenv("HKQ_SEED", "42")
        assert Settings(_env_file=None).hkq_seed == 42

    @pytest.mark.unit
    def test_names_are_case_insensitive(self, monkeypatch):
        """hkq_seed and HKQ_SEED are the same variable."""
        from hkq.config import Settings

        monkeypatch.setenv("hkq_seed", "7")
        assert Settings(_env_file=None).hkq_seed == 7

    @pytest.mark.unit
    def test_env_file(self, tmp_path, monkeypatch):
        """Values are read from a .env file."""
        from hkq.config import Settings

        monkeypatch.delenv("MAX_CONCURRENCY", raising=False)
        env = tmp_path / ".env"
        env.write_text("MAX_CONCURRENCY=2\n", encoding="utf-8")
        assert Settings(_env_file=env).max_concurrency == 2

    @pytest.mark.unit
    def test_unknown_engine_rejected(self, monkeypatch):
        """groebner_method only accepts the engines that exist."""
        from pydantic import ValidationError

        from hkq.config import Settings

        monkeypatch.setenv("GROEBNER_METHOD", "magic")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)

    @pytest.mark.unit
    def test_concurrency_must_be_positive(self, monkeypatch):
        """max_concurrency = 0 fails validation."""
        from pydantic import ValidationError

        from hkq.config import Settings

        monkeypatch.setenv("MAX_CONCURRENCY", "0")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)
