"""diagsemi: computational algebra for the ten diagram-semigroup families."""

from .elements import (
    Bipartition,
    MapElement,
    PBR,
    PointPermutation,
    bipartition_from_pbr,
    bipartition_product,
    classify,
    conjugate,
    element_product,
    is_planar,
    pbr_from_bipartition,
    pbr_identity,
    pbr_product,
    rank,
)
from .embeddings import embed, realize
from .formulas import family_order
from .catalog import standard_generators
from .engine import enumerate_family, enumerate_semigroup, green_structure, idempotents
from .census import all_subsemigroups, census_up_to_conjugacy, subgroup_census, symmetry_group

__version__ = "0.1.0"

__all__ = [
    "Bipartition", "MapElement", "PBR", "PointPermutation",
    "bipartition_from_pbr", "bipartition_product", "classify", "conjugate",
    "element_product", "is_planar", "pbr_from_bipartition", "pbr_identity",
    "pbr_product", "rank", "embed", "realize", "family_order",
    "standard_generators", "enumerate_family", "enumerate_semigroup",
    "green_structure", "idempotents", "all_subsemigroups",
    "census_up_to_conjugacy", "subgroup_census", "symmetry_group",
]
