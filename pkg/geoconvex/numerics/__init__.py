"""Numerical building blocks: quadrature, bound kernels and special means."""

from .kernels import CaseRegion, KernelFunction, ThetaSet, case_weights, h_dispatch, kernel_g, theta_set
from .means import MeanFamily, MeanKind, mean, means_chain
from .quadrature import QuadratureResult, geometric_average, integrate

__all__ = [
    "CaseRegion",
    "KernelFunction",
    "MeanFamily",
    "MeanKind",
    "QuadratureResult",
    "ThetaSet",
    "case_weights",
    "geometric_average",
    "h_dispatch",
    "integrate",
    "kernel_g",
    "mean",
    "means_chain",
    "theta_set",
]
