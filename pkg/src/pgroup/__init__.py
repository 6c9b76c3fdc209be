"""Finite p-groups of nilpotency class 2 and their noninner automorphisms.

Groups are Cayley tables with dense element indices (identity at 0) or
polycyclic presentations converted to tables by collection.  The main entry
point is :func:`construct_noninner`, which returns a certificate whose
verification flags are recomputed from the permutation alone.
"""
from .automorphism import (Automorphism, automorphism_order, extend_product, fixes_pointwise,
                           from_generator_images, inner_automorphism, is_inner, remark4_map)
from .construction import NoninnerCertificate, certify, construct_noninner, resolve_power_relation
from .errors import GroupError
from .kernels import BACKEND
from .oracle import enumerate_automorphisms, search_fallback, theorem_witnesses
from .pc import (PcPresentation, check_consistency, collect_power, collect_product,
                 format_presentation, load_presentation, parse_presentation, to_cayley)
from .structure import (center, derived_subgroup, ds_condition, frattini, nilpotency_class,
                        omega1_center, profile)
from .table import GroupTable, SubgroupRef, load_cayley, save_cayley, validate_table

__version__ = "0.1.0"

__all__ = [
    "Automorphism", "BACKEND", "GroupError", "GroupTable", "NoninnerCertificate", "PcPresentation",
    "SubgroupRef", "automorphism_order", "center", "certify", "check_consistency", "collect_power",
    "collect_product", "construct_noninner", "derived_subgroup", "ds_condition",
    "enumerate_automorphisms", "extend_product", "fixes_pointwise", "format_presentation",
    "frattini", "from_generator_images", "inner_automorphism", "is_inner", "load_cayley",
    "load_presentation", "nilpotency_class", "omega1_center", "parse_presentation", "profile",
    "remark4_map", "resolve_power_relation", "save_cayley", "search_fallback", "theorem_witnesses",
    "to_cayley", "validate_table",
]
