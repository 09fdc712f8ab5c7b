"""Locally recoverable codes from rational maps, curves and grids."""

from .field import GF, FieldSpec
from .polytope import Polytope, hypercube, simplex, weighted_polytope
from .rational_map import CodeBlueprint, RationalFunction, build_code
from .analysis.code import LinearCode, measure
from .analysis.distance import DistanceResult, dual_distance, min_distance
from .analysis.bounds import bound_report, classify
from .analysis.recovery import LRCProfile, recover, verify_recovery

__all__ = [
    "GF", "FieldSpec", "Polytope", "hypercube", "simplex", "weighted_polytope",
    "CodeBlueprint", "RationalFunction", "build_code", "LinearCode", "measure",
    "DistanceResult", "dual_distance", "min_distance", "bound_report", "classify",
    "LRCProfile", "recover", "verify_recovery",
]
