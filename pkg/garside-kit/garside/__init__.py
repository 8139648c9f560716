"""
garside

Computational toolkit for Garside theory: presentations, subword reversing,
divisibility, normal forms, Garside families, germs and RC-systems.
"""

from .config import configure, get_settings, reset
from .divisibility import Element, equal, left_divisors, right_lcm, right_mcms, select_backend
from .errors import GarsideError
from .families import smallest_garside_family
from .germs import parse_germ, validate_germ
from .normal_forms import Family, normal_decomposition
from .presentation import Presentation, build_presentation, parse_presentation
from .rc import parse_rc, validate_rc
from .reversing import left_reverse, right_reverse

__version__ = "0.1.0"

__all__ = [
    "Element",
    "Family",
    "GarsideError",
    "Presentation",
    "build_presentation",
    "configure",
    "equal",
    "get_settings",
    "left_divisors",
    "left_reverse",
    "normal_decomposition",
    "parse_germ",
    "parse_presentation",
    "parse_rc",
    "reset",
    "right_lcm",
    "right_mcms",
    "right_reverse",
    "select_backend",
    "smallest_garside_family",
    "validate_germ",
    "validate_rc",
]
