"""Exact homology of N-complexes over F_p and q-deformed Hochschild N-complexes."""
from .algebra import FDModule, FinDimAlgebra, dual_numbers, truncated_polynomial
from .errors import QHochschildError
from .hochschild import classical_hh, hochschild_ncomplex, phh, theorem1_check
from .ncomplex import NComplex, NComplexMorphism, NResolution, homology_dim
from .qcalc import QContext, find_context, make_context

__version__ = "0.1.0"

__all__ = [
    "FDModule", "FinDimAlgebra", "NComplex", "NComplexMorphism", "NResolution",
    "QContext", "QHochschildError", "classical_hh", "dual_numbers", "find_context",
    "homology_dim", "hochschild_ncomplex", "make_context", "phh", "theorem1_check",
    "truncated_polynomial",
]
