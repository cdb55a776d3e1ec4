"""Exact support tau-tilting machinery over bound quiver algebras.

The package computes, over GF(p), complete support tau-tilting data for
desk-scale bound quiver algebras and classifies the functorially finite
IE-closed subcategories of their module categories, together with the
canonical twin pairs and Ext-pairs attached to each one.
"""

from .linalg import FieldSpec
from .algebra import (
    Arrow,
    BoundQuiverAlgebra,
    MonomialRelation,
    Quiver,
    build_algebra,
    opposite_algebra,
    standard_module,
)
from .repcore import (
    Morphism,
    Representation,
    direct_sum,
    dualize,
    hom_basis,
    is_isomorphic,
    zero_module,
)
from .catalog import (
    Catalog,
    bruteforce_indecomposables,
    interval_catalog,
    load_catalog,
    validate_catalog,
)

__all__ = [
    "Arrow",
    "BoundQuiverAlgebra",
    "Catalog",
    "FieldSpec",
    "MonomialRelation",
    "Morphism",
    "Quiver",
    "Representation",
    "build_algebra",
    "bruteforce_indecomposables",
    "direct_sum",
    "dualize",
    "hom_basis",
    "interval_catalog",
    "is_isomorphic",
    "load_catalog",
    "opposite_algebra",
    "standard_module",
    "validate_catalog",
    "zero_module",
]
