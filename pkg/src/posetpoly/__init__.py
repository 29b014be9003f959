"""Lattice polytopes cut out by poset width inequalities, with exact checks
on the Grassmannian root poset."""

from .errors import PosetPolyError
from .poset import (
    Poset, antichain_poset, build_poset, chain_poset, max_antichain,
    maximal_chains, min_chain_cover, poset_from_json, random_poset, width,
)
from .polytope import (
    DecompositionCert, Params, decompose, enumerate_points, membership,
    minkowski_check, partition_poset, strip_antichain, strip_unit, violation_excess,
)
from .grassmann import RootPoset, dyck_paths, fflv_points, inequality_system, root_poset, weyl_dim

__all__ = [
    "PosetPolyError", "Poset", "antichain_poset", "build_poset", "chain_poset",
    "max_antichain", "maximal_chains", "min_chain_cover", "poset_from_json",
    "random_poset", "width", "DecompositionCert", "Params", "decompose",
    "enumerate_points", "membership", "minkowski_check", "partition_poset",
    "strip_antichain", "strip_unit", "violation_excess", "RootPoset", "dyck_paths",
    "fflv_points", "inequality_system", "root_poset", "weyl_dim",
]
