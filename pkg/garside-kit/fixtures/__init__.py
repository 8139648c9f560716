"""
fixtures

Presentations, germ tables and RC tables with their expected facts.
"""

from .corpus import (
    ALIASES,
    DERIVED,
    FIXTURE_DIR,
    FIXTURES,
    PAPER,
    Expectation,
    Fixture,
    artin_tits_presentation,
    large_type_seed_set,
    load_fixture,
    resolve_fixture,
    smallest_family_size,
    uniform_artin_tits,
)

__all__ = [
    "ALIASES",
    "DERIVED",
    "FIXTURE_DIR",
    "FIXTURES",
    "PAPER",
    "Expectation",
    "Fixture",
    "artin_tits_presentation",
    "large_type_seed_set",
    "load_fixture",
    "resolve_fixture",
    "smallest_family_size",
    "uniform_artin_tits",
]
