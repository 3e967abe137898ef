"""Quantum topology invariants from fusion-category data.

Fusion rings and F-symbols go in; Drinfeld centers (via the tube algebra),
Turaev-Viro state sums, surgery invariants of plumbing trees, state-space
dimensions, positivity criteria and genus-1 indicators come out.
"""
from ._config import get_tol, set_tol, tolerance
from .category import (
    DataError, DimensionData, FSymbolSet, FusionRing, InvariantError, ModularData, NimRep, ParseError,
    PentagonReport, frobenius_perron_data, parse_fsymbols, parse_fusion_ring, parse_modular_data, parse_nimrep,
    regular_nimrep, verify_pentagon,
)
from .criteria import CriterionReport, check_module_positivity, check_positivity, criterion_matrix, omega_rank_one
from .indicators import (
    TorusCurve, check_equivariance, fs_indicator, genus1_indicator, indicator_reference_oracle, omega_sum,
    omega_sum_from_modular,
)
from .state_spaces import DecoratedSurface, dim_closed_surface, dim_state_space, parse_surface
from .surgery import PlumbingTree, SL2ZWord, parse_plumbing, rt_invariant, sl2z_factor, verlinde_dimension
from .triangulation import Triangulation, first_homology, lens_space, parse_triangulation
from .tube import CenterData, TubeAlgebra, build_tube_algebra, center_from_square, decompose_center, match_modular_data
from .turaev_viro import tv_invariant, vec_g_oracle

__version__ = "0.1.0"

__all__ = [
    "get_tol", "set_tol", "tolerance",
    "DataError", "ParseError", "InvariantError", "FusionRing", "DimensionData", "FSymbolSet", "PentagonReport",
    "ModularData", "NimRep", "parse_fusion_ring", "frobenius_perron_data", "parse_fsymbols", "verify_pentagon",
    "parse_modular_data", "parse_nimrep", "regular_nimrep",
    "CriterionReport", "criterion_matrix", "check_positivity", "check_module_positivity", "omega_rank_one",
    "TubeAlgebra", "CenterData", "build_tube_algebra", "decompose_center", "center_from_square",
    "match_modular_data",
    "Triangulation", "parse_triangulation", "first_homology", "lens_space", "tv_invariant", "vec_g_oracle",
    "PlumbingTree", "SL2ZWord", "parse_plumbing", "rt_invariant", "verlinde_dimension", "sl2z_factor",
    "DecoratedSurface", "parse_surface", "dim_state_space", "dim_closed_surface",
    "TorusCurve", "genus1_indicator", "fs_indicator", "check_equivariance", "indicator_reference_oracle",
    "omega_sum", "omega_sum_from_modular",
]
