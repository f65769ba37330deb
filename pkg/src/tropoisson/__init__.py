"""Tropicalization of Poisson brackets with Laurent-polynomial coefficients,
and the U(n)* / Gelfand-Zeitlin example built on it."""

from .arith import COMPLEX, CONJ, I, ONE, REAL, ZERO, GaussianRational, LaurentPoly, VarRegistry
from .poisson import PoissonStructure, check_jacobi, check_reality, split_log_canonical
from .polyhedra import (EmptyConeError, StrictCone, cone_equal, cone_implies,
                        cone_interior_sample, cone_is_empty, cone_remove_redundant)
from .report import Report
from .tropical import (ConstantBracket, RealityError, casimirs, constant_bracket,
                       limit_sample, tropical_cone)

__version__ = "0.1.0"
