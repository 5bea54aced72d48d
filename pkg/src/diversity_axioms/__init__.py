"""Diversity measures for finite collections and falsifiers for three axioms."""

from .axioms import (
    AxiomVerdict,
    check_continuity,
    check_duplicate_placement_invariance,
    check_monotonicity,
    check_uniqueness,
    property_matrix,
)
from .catalog import get_measure, measure_names
from .core import (
    DistanceMatrix,
    PointConfiguration,
    SimilarityMatrix,
    distances_from_points,
    duplicate_classes,
    validate_distance_matrix,
    validate_similarity_matrix,
)
from .errors import DiversityError, ValidationError
from .registry import CASE_IDS, registry_case

__all__ = [
    "AxiomVerdict",
    "CASE_IDS",
    "DistanceMatrix",
    "DiversityError",
    "PointConfiguration",
    "SimilarityMatrix",
    "ValidationError",
    "check_continuity",
    "check_duplicate_placement_invariance",
    "check_monotonicity",
    "check_uniqueness",
    "distances_from_points",
    "duplicate_classes",
    "get_measure",
    "measure_names",
    "property_matrix",
    "registry_case",
    "validate_distance_matrix",
    "validate_similarity_matrix",
]
