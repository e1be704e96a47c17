"""Convexity classification, bound evaluation and the special-means propositions."""

from .applications import PowerFamilySpec, PropositionReport, proposition31, proposition32
from .base import CheckRecord, ConvexityVerdict, SampleGrid
from .bounds import (
    BoundReport,
    ChainReport,
    IdentityResidual,
    ProofChainReport,
    geometric_chain,
    hh_classical,
    lemma_identity_residuals,
    proof_chain,
    q1_reduction_check,
    s1_reduction_check,
    theorem21_bounds,
    theorem22_bounds,
    weighted_log_integral,
)
from .convexity import check_convex, check_geometric, check_s_convex_second_sense, check_s_geometric, s_profile

__all__ = [
    "BoundReport",
    "ChainReport",
    "CheckRecord",
    "ConvexityVerdict",
    "IdentityResidual",
    "PowerFamilySpec",
    "ProofChainReport",
    "PropositionReport",
    "SampleGrid",
    "check_convex",
    "check_geometric",
    "check_s_convex_second_sense",
    "check_s_geometric",
    "geometric_chain",
    "hh_classical",
    "lemma_identity_residuals",
    "proof_chain",
    "proposition31",
    "proposition32",
    "q1_reduction_check",
    "s1_reduction_check",
    "s_profile",
    "theorem21_bounds",
    "theorem22_bounds",
    "weighted_log_integral",
]
