"""Combinatorial patchworking over F_2: triangulations, phase structures,
T-manifold homology, and Hodge numbers with exact integer arithmetic."""

__version__ = "0.1.0"

from .polytope import LatticePolytope, dilated_simplex, unit_cube
from .triangulation import Triangulation, generate_alcove, trivial_triangulation
from .cellpairs import XiPoset
from .phase import (RealPhaseStructure, from_sign_distribution,
                    to_sign_distribution, trivial_k0)
from .hodgeclosed import hodge_table
from .hodgecosheaf import hodge_poset
from .tmanifold import betti_via_cosheaf, betti_via_simplicial

__all__ = [
    "LatticePolytope", "dilated_simplex", "unit_cube",
    "Triangulation", "generate_alcove", "trivial_triangulation",
    "XiPoset", "RealPhaseStructure", "from_sign_distribution",
    "to_sign_distribution", "trivial_k0",
    "hodge_table", "hodge_poset",
    "betti_via_cosheaf", "betti_via_simplicial",
]
