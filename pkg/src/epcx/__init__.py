"""Generalized complex analysis for the algebra with i^2 = -alpha - beta*i."""

from .algebra import GC, I, ONE, ZERO, AlgebraParams, conj, equivalence_constants, ihat, inv, mul, norm_ab
from .grid import ComplexField, Disk, GridSpec, Rect
from .holo import HoloPoly, derive, to_field
from .rewrite import RealCoeffs, complex_to_real, coefficient_matrix, det_check, real_to_complex, synthesize

__version__ = "0.1.0"

__all__ = [
    "GC", "I", "ONE", "ZERO", "AlgebraParams", "conj", "equivalence_constants", "ihat", "inv", "mul",
    "norm_ab", "ComplexField", "Disk", "GridSpec", "Rect", "HoloPoly", "derive", "to_field",
    "RealCoeffs", "complex_to_real", "coefficient_matrix", "det_check", "real_to_complex", "synthesize",
]
