"""Exact symbolic analysis of affine fibrations of polynomial maps over Q."""

from .polyalg import Polynomial, RationalFunction, gcd
from .symlinalg import PolyMatrix, bareiss_rank, kernel_basis, pluecker
from .fibration import (
    FibrationAnalysis,
    GrassmannPoint,
    HoloMap,
    analyze,
    check_a1,
    check_a2,
    from_components,
    from_potential,
    limit_along_curve,
    rank_on_affine_set,
)
from .conjecture import AffineSubspace, contains_affine_set, intersect, verify_union_of_affine
from .parsing import ParseError, parse_polynomial, print_polynomial
from .report import FibrationReport
from .catalog import get_entry, list_entries, run_entry

__all__ = [
    "AffineSubspace",
    "FibrationAnalysis",
    "FibrationReport",
    "GrassmannPoint",
    "HoloMap",
    "ParseError",
    "PolyMatrix",
    "Polynomial",
    "RationalFunction",
    "analyze",
    "bareiss_rank",
    "check_a1",
    "check_a2",
    "contains_affine_set",
    "from_components",
    "from_potential",
    "gcd",
    "get_entry",
    "intersect",
    "kernel_basis",
    "limit_along_curve",
    "list_entries",
    "parse_polynomial",
    "pluecker",
    "print_polynomial",
    "rank_on_affine_set",
    "run_entry",
    "verify_union_of_affine",
]
