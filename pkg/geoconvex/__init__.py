"""geoconvex - numerical verification of Hermite-Hadamard type bounds for s-geometrically convex functions."""

__version__ = "1.0.0"
__author__ = "geoconvex developers"
__description__ = "Evaluate and check Hermite-Hadamard type inequalities for s-geometrically convex functions"
