"""Exact Drinfeld modular polynomials for T-isogenies of rank-r Drinfeld F_q[T]-modules."""

from .fq import FqField, fq_make
from .invariants import InvariantError, MonomialInvariant, evaluate_J, invariant_make, psi_r, weight
from .isogeny import DrinfeldModule, build_Q, build_Qtilde, incoming_source, outgoing_target, verify_dual_identity
from .linalg import RingMatrix, charpoly_division_free, companion
from .newton import newton_polygon, root_valuations
from .pipeline import (ModularPolynomial, PipelineConfig, PipelineFault, compute_modpoly, degree_table,
                       trace_sanity, verify_theorem)
from .ring import Ring, RingElem, ring
from .skew import SkewPoly

__all__ = [
    "FqField", "fq_make", "InvariantError", "MonomialInvariant", "evaluate_J", "invariant_make", "psi_r",
    "weight", "DrinfeldModule", "build_Q", "build_Qtilde", "incoming_source", "outgoing_target",
    "verify_dual_identity", "RingMatrix", "charpoly_division_free", "companion", "newton_polygon",
    "root_valuations", "ModularPolynomial", "PipelineConfig", "PipelineFault", "compute_modpoly",
    "degree_table", "trace_sanity", "verify_theorem", "Ring", "RingElem", "ring", "SkewPoly",
]
