"""Finite multi-simplicial models of weak n-categories.

Presheaves on finite truncations of Delta^n, nerves of categories and of strict
and weak 2-categories, truncation, outer/inner equivalences, n-nerf validation
and homotopy groups, all by exhaustive enumeration over dense integer arrays.
"""

from .cat_nerve import (CategoryError, FinCategory, category_from_tables, extract_category,
                        group_category, is_one_nerve, nerve)
from .equivalence import (EquivalenceReport, hom_class_maps, inner_classes, inner_equivalent,
                          is_outer_k_equivalence)
from .homotopy import (HomotopyError, HomotopyGroup, component_category, equivalence_via_pi,
                       homotopy_group, induced_pi, resolve_base, whisker_iso)
from .nerf_validator import NerfReport, is_n_groupoid, is_n_nerf, is_strict_nerf
from .presheaf import (FinPresheaf, PresheafError, PresheafMorphism, Region, TooLarge,
                       ValidationReport, build_from_rows, fiber_power, identity_morphism,
                       slice_presheaf, terminal, validate)
from .strict_ncat import StrictError, StrictNCategory, multi_nerve, strict_truncate, validate_strict
from .truncation import (TruncationError, is_truncatable, pi0, pi0_labels, truncate,
                         truncate_morphism, truncation_tower)
from .weak2 import (Weak2Category, Weak2Error, Weak2Report, double_nerve, extract_weak2,
                    strictify, validate_weak2, weak2_from_strict, weak2_to_strict)

__version__ = "0.1.0"

__all__ = [
    "CategoryError", "FinCategory", "category_from_tables", "extract_category", "group_category",
    "is_one_nerve", "nerve",
    "EquivalenceReport", "hom_class_maps", "inner_classes", "inner_equivalent",
    "is_outer_k_equivalence",
    "HomotopyError", "HomotopyGroup", "component_category", "equivalence_via_pi",
    "homotopy_group", "induced_pi", "resolve_base", "whisker_iso",
    "NerfReport", "is_n_groupoid", "is_n_nerf", "is_strict_nerf",
    "FinPresheaf", "PresheafError", "PresheafMorphism", "Region", "TooLarge", "ValidationReport",
    "build_from_rows", "fiber_power", "identity_morphism", "slice_presheaf", "terminal", "validate",
    "StrictError", "StrictNCategory", "multi_nerve", "strict_truncate", "validate_strict",
    "TruncationError", "is_truncatable", "pi0", "pi0_labels", "truncate", "truncate_morphism",
    "truncation_tower",
    "Weak2Category", "Weak2Error", "Weak2Report", "double_nerve", "extract_weak2", "strictify",
    "validate_weak2", "weak2_from_strict", "weak2_to_strict",
]
