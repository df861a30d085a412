"""Computations in Artin monoids and the KMS temperature analysis of their C*-algebras."""
from .presentation import (
    MonoidPresentation,
    braid,
    classify,
    dihedral,
    direct_product,
    free_product,
    from_matrix,
    load_fixture,
    load_presentation,
    parse_presentation,
)
from .words import INF, ArtinMonoid

__version__ = "0.1.0"

__all__ = [
    "INF",
    "ArtinMonoid",
    "MonoidPresentation",
    "braid",
    "classify",
    "dihedral",
    "direct_product",
    "free_product",
    "from_matrix",
    "load_fixture",
    "load_presentation",
    "parse_presentation",
]
