"""Finite categories, posets with group actions, complexes and homology."""
from .category import (
    FinCategory,
    Functor,
    SubdivisionClasses,
    comma_category,
    is_filtered,
    subdivision_class_poset,
    transporter_category,
)
from .chains import (
    ChainOrbit,
    GPoset,
    OrbitPoset,
    chain_orbits,
    find_poset_isomorphism,
    load_poset_file,
    orbit_complex,
    orbit_poset,
)
from .complex import HomologyReport, SimplicialComplex, all_chains, homology, order_complex
from .morse import BuxReport, DirectedGGraph, bux_check

__all__ = [
    "FinCategory", "Functor", "SubdivisionClasses", "comma_category", "is_filtered",
    "subdivision_class_poset", "transporter_category", "ChainOrbit", "GPoset", "OrbitPoset",
    "chain_orbits", "find_poset_isomorphism", "load_poset_file", "orbit_complex", "orbit_poset",
    "HomologyReport", "SimplicialComplex", "all_chains", "homology", "order_complex",
    "BuxReport", "DirectedGGraph", "bux_check",
]
