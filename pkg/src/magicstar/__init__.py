"""Exact root systems, brackets and machine verification of Magic Star algebras.

The five exceptional families generalize over a periodicity level n >= 1
(ambient dimension N = 4(n+1)); level 1 recovers the classical g2, f4, e6,
e7, e8.  All arithmetic is exact: doubled integer coordinates for roots,
rationals for everything else.
"""

from .algebra import AlgebraElement, MagicStarAlgebra, StructureConstants
from .asymmetry import EpsilonTable
from .report import VerifyReport
from .roots import (
    AlgebraId,
    CapacityError,
    DimensionMismatch,
    Family,
    RootSystem,
    RootVector,
    generate,
    inner,
    is_root,
    read_roots_tsv,
    spinor_inner_from_masks,
    sum_root,
    weyl_reflect,
    write_roots_tsv,
)
from .simple import NotInLattice, NotInSpan, SimpleBasis
from .star import (
    StarCell,
    emit_star_svg,
    grade,
    grade_all,
    grading_piece_sizes,
    project,
    verify_e7_decomposition,
    verify_grading,
    verify_nested_star,
    verify_tables,
    write_cells_tsv,
)
from .tables import SweepTables
from .verify import SUITE_NAMES, check_epsilon, check_simple, check_weyl, run_suite

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AlgebraId",
    "CapacityError",
    "DimensionMismatch",
    "EpsilonTable",
    "Family",
    "MagicStarAlgebra",
    "NotInLattice",
    "NotInSpan",
    "RootSystem",
    "RootVector",
    "SimpleBasis",
    "StarCell",
    "StructureConstants",
    "SUITE_NAMES",
    "SweepTables",
    "VerifyReport",
    "check_epsilon",
    "check_simple",
    "check_weyl",
    "emit_star_svg",
    "generate",
    "grade",
    "grade_all",
    "grading_piece_sizes",
    "inner",
    "is_root",
    "project",
    "read_roots_tsv",
    "run_suite",
    "spinor_inner_from_masks",
    "sum_root",
    "verify_e7_decomposition",
    "verify_grading",
    "verify_nested_star",
    "verify_tables",
    "weyl_reflect",
    "write_cells_tsv",
    "write_roots_tsv",
]
