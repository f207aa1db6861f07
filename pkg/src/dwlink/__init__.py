"""Exact link invariants of the twisted Drinfeld doubles of Z_11 x| Z_5."""

from .anyons import AnyonLabel, build_category
from .braids import BraidWord, closure_invariant, invariant_tensor, parse_braidword
from .cyclotomic import CyclotomicInteger
from .group import GroupSpec, MetacyclicGroup

__version__ = "1.0.0"

__all__ = [
    "AnyonLabel",
    "BraidWord",
    "CyclotomicInteger",
    "GroupSpec",
    "MetacyclicGroup",
    "build_category",
    "closure_invariant",
    "invariant_tensor",
    "parse_braidword",
]
