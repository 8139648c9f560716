"""
test_config.py

Unit tests for config.py.
"""

import pytest


class TestGetSettings:
    """Tests for get_settings function."""

    def test_reads_environment(self, monkeypatch):
        """Test that limits come from GARSIDE_* variables."""
        from garside.config import get_settings

        monkeypatch.setenv("GARSIDE_MAX_STEPS", "50")
        monkeypatch.setenv("GARSIDE_LOG_LEVEL", "debug")

        settings = get_settings()

        assert settings.max_steps == 50
        assert settings.log_level == "DEBUG"

    def test_non_integer_falls_back(self, monkeypatch):
        """Test that a malformed value keeps the default."""
        from garside.config import get_settings

        monkeypatch.setenv("GARSIDE_MAX_STATES", "lots")

        assert get_settings().max_states == 10000

    def test_empty_value_falls_back(self, monkeypatch):
        """Test that an empty value keeps the default."""
        from garside.config import get_settings

        monkeypatch.setenv("GARSIDE_MAX_LENGTH", "")

        assert get_settings().max_length == 24


class TestConfigure:
    """Tests for configure and reset functions."""

    def test_override_beats_environment(self, monkeypatch):
        """Test that configure() wins over the environment until reset()."""
        from garside.config import configure, get_settings, reset

        monkeypatch.setenv("GARSIDE_MAX_STEPS", "50")
        configure(max_steps=7)

        assert get_settings().max_steps == 7

        reset()
        assert get_settings().max_steps == 50

    def test_none_leaves_value(self):
        """Test that unset arguments are not overridden."""
        from garside.config import configure

        settings = configure(max_length=5)

        assert settings.max_length == 5
        assert settings.max_steps == 10000

    def test_rejects_nonpositive(self):
        """Test that limits must be positive."""
        from garside.config import configure

        with pytest.raises(ValueError):
            configure(max_steps=0)
        with pytest.raises(ValueError):
            configure(max_states=-1)

    def test_zero_slack_allowed(self):
        """Test that the ball slack may be zero."""
        from garside.config import configure

        assert configure(ball_slack=0).ball_slack == 0


class TestGetLogger:
    """Tests for get_logger function."""

    def test_prefixes_names(self):
        """Test that loggers live under the garside namespace."""
        from garside.config import get_logger

        assert get_logger("fixtures.verify").name == "garside.fixtures.verify"
        assert get_logger("garside.reversing").name == "garside.reversing"

    def test_single_handler(self):
        """Test that repeated calls do not stack handlers."""
        import logging

        from garside.config import get_logger

        get_logger("a")
        get_logger("b")

        assert len(logging.getLogger("garside").handlers) == 1
