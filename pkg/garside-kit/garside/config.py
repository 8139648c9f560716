"""
garside/config.py

Runtime settings for the toolkit, read from the environment (and an optional
.env file in the garside-kit directory), plus the shared logger factory.
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Dict, Optional

from dotenv import load_dotenv

BASE_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
ENV_PATH = os.path.join(BASE_DIR, ".env")
load_dotenv(ENV_PATH)

LOG_FORMAT = "%(levelname)s: %(message)s"

_overrides: Dict[str, int] = {}
_logging_ready = False


@dataclass(frozen=True)
class Settings:
    """Search limits shared by every engine."""

    max_steps: int = 10000
    max_length: int = 24
    max_states: int = 10000
    ball_slack: int = 2
    log_level: str = "WARNING"


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logging.getLogger("garside").warning(
            "ignoring non-integer %s=%r, using %d", name, raw, default
        )
        return default


def get_settings() -> Settings:
    """
    Read the current settings.

    Environment variables are consulted on every call so that tests can
    change them; values installed with configure() take precedence.

    Returns:
        Settings record
    """
    settings = Settings(
        max_steps=_int_env("GARSIDE_MAX_STEPS", 10000),
        max_length=_int_env("GARSIDE_MAX_LENGTH", 24),
        max_states=_int_env("GARSIDE_MAX_STATES", 10000),
        ball_slack=_int_env("GARSIDE_BALL_SLACK", 2),
        log_level=os.getenv("GARSIDE_LOG_LEVEL", "WARNING").upper(),
    )
    if _overrides:
        settings = replace(settings, **_overrides)
    return settings


def configure(
    max_steps: Optional[int] = None,
    max_length: Optional[int] = None,
    max_states: Optional[int] = None,
    ball_slack: Optional[int] = None,
) -> Settings:
    """
    Install process-wide overrides (used by the CLI global flags).

    Args:
        max_steps: reversing step budget
        max_length: longest word a reversing configuration may reach
        max_states: breadth-first frontier cap
        ball_slack: extra radius for non-homogeneous ball searches

    Returns:
        The resulting settings
    """
    for key, value in (
        ("max_steps", max_steps),
        ("max_length", max_length),
        ("max_states", max_states),
        ("ball_slack", ball_slack),
    ):
        if value is not None:
            if value <= 0 and key != "ball_slack":
                raise ValueError(f"{key} must be positive, got {value}")
            _overrides[key] = value
    return get_settings()


def reset() -> None:
    """Drop every override installed by configure()."""
    _overrides.clear()


def get_logger(name: str) -> logging.Logger:
    """
    Return a module logger; the root "garside" handler is set up once.

    Args:
        name: dotted module name

    Returns:
        logging.Logger writing "LEVEL: message" lines to stderr
    """
    global _logging_ready
    root = logging.getLogger("garside")
    if not _logging_ready:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.propagate = False
        _logging_ready = True
    root.setLevel(get_settings().log_level)
    if name == "garside" or name.startswith("garside."):
        return logging.getLogger(name)
    return logging.getLogger(f"garside.{name}")
