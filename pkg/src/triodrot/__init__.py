"""Exact combinatorics of rotation twist patterns on the triod."""

from __future__ import annotations

__version__ = "0.1.0"

from .core import (
    CENTER,
    RotationPair,
    TriodPattern,
    TriodPoint,
    canonical_form,
    degrees_of_freedom,
    displacement,
    normalize_branch_order,
    one_third_flip,
    rotation_pair,
    sharkovsky_leq,
)
from .errors import (
    BadRho,
    BudgetExceeded,
    CenterPoint,
    InvalidPattern,
    NoCycle,
    NoInnerRing,
    NotATwist,
    OutsideHull,
    ParseError,
    TriodError,
)
from .generator import catalog_one_third, family, generate_high, generate_low
from .plinear import build, modality
from .trp import emit_trp, parse_trp
from .twist import is_twist

__all__ = [
    "CENTER",
    "BadRho",
    "BudgetExceeded",
    "CenterPoint",
    "InvalidPattern",
    "NoCycle",
    "NoInnerRing",
    "NotATwist",
    "OutsideHull",
    "ParseError",
    "RotationPair",
    "TriodError",
    "TriodPattern",
    "TriodPoint",
    "build",
    "canonical_form",
    "catalog_one_third",
    "degrees_of_freedom",
    "displacement",
    "emit_trp",
    "family",
    "generate_high",
    "generate_low",
    "is_twist",
    "modality",
    "normalize_branch_order",
    "one_third_flip",
    "parse_trp",
    "rotation_pair",
    "sharkovsky_leq",
]
