"""Exact-arithmetic workbench for the nonpositive parts of the five
exceptional simple Lie superalgebras of vector fields.

The package builds E(4,4), E(5,10), E(3,6), E(3,8) and E(1,6) down to
structure constants over the rationals, verifies their defining invariants
(antisymmetry, super Jacobi, grading/parity, transitivity, generation), and
classifies Hom-Lie structures on them by exact linear and polynomial
elimination.
"""

__version__ = "0.1.0"

from .builders import ALGEBRA_IDS, build
from .homsolver import classify

__all__ = ["ALGEBRA_IDS", "build", "classify", "__version__"]
