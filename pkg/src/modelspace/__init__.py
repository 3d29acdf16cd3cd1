"""Face matchings of standard simplices, their quotient model spaces,
integral cellular homology and fundamental group presentations."""

from .homology import (
    AbelianGroup,
    HomologyProfile,
    IntMatrix,
    generation_rank,
    homology,
    is_sphere_profile,
    pd_compatible,
    smith_normal_form,
    suspension_shift_check,
)
from .matchings import (
    Matching,
    MatchingSystem,
    SignType,
    canonical_descriptor,
    catalog,
    enumerate_single,
    enumerate_two_simplex,
    parse_descriptor,
    standard_matching,
    trivial_extension,
    validate_system,
)
from .pi1 import Presentation, abelianization, classify, presentation, tietze_simplify
from .quotient import (
    build_quotient,
    components,
    cycle_class_check,
    front_face_boundary,
    spanning_tree_edges,
    vertex_equivalence,
)

__all__ = [
    "AbelianGroup",
    "HomologyProfile",
    "IntMatrix",
    "Matching",
    "MatchingSystem",
    "Presentation",
    "SignType",
    "abelianization",
    "build_quotient",
    "canonical_descriptor",
    "catalog",
    "classify",
    "components",
    "cycle_class_check",
    "enumerate_single",
    "enumerate_two_simplex",
    "front_face_boundary",
    "generation_rank",
    "homology",
    "is_sphere_profile",
    "parse_descriptor",
    "pd_compatible",
    "presentation",
    "smith_normal_form",
    "spanning_tree_edges",
    "standard_matching",
    "suspension_shift_check",
    "tietze_simplify",
    "trivial_extension",
    "validate_system",
    "vertex_equivalence",
]

__version__ = "0.1.0"
