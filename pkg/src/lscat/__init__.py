"""Exact Lusternik-Schnirelmann category and gradient-like dynamics on finite spaces."""

from .category import (CAT_INDEX, CARDINALITY_INDEX, NONEMPTY_INDEX, CoverSolution,
                       IndexFunction, cat_closed, cat_rel, cat_space, check_axioms,
                       reeken_compare)
from .cohomology import betti_gf2, cup_length, inclusion_induced_rank, order_complex
from .dynamics import (GradientLikeSystem, evolve, minmax_spectrum, rest_points, sublevel,
                       validate_system, verify_theorem)
from .errors import (BudgetExceeded, CriticalityViolation, CycleDetected, LSError,
                     NotDeformation, NotLyapunov, NotMonotone, ParseError)
from .generators import generate_space, generate_system
from .homotopy import (Fence, are_homotopic, homology_obstruction, homotopic_to_identity,
                       is_contractible, is_contractible_in)
from .space import (FiniteSpace, MonotoneMap, PointSet, build_space, components, core,
                    minimal_open, open_down_sets)

__all__ = [
    "CAT_INDEX", "CARDINALITY_INDEX", "NONEMPTY_INDEX", "CoverSolution", "IndexFunction",
    "cat_closed", "cat_rel", "cat_space", "check_axioms", "reeken_compare", "betti_gf2",
    "cup_length", "inclusion_induced_rank", "order_complex", "GradientLikeSystem",
    "evolve", "minmax_spectrum", "rest_points", "sublevel", "validate_system",
    "verify_theorem", "BudgetExceeded", "CriticalityViolation", "CycleDetected",
    "LSError", "NotDeformation", "NotLyapunov", "NotMonotone", "ParseError",
    "generate_space", "generate_system", "Fence", "are_homotopic",
    "homology_obstruction", "homotopic_to_identity", "is_contractible",
    "is_contractible_in", "FiniteSpace", "MonotoneMap", "PointSet", "build_space",
    "components", "core", "minimal_open", "open_down_sets"
]

__version__ = "0.1.0"
