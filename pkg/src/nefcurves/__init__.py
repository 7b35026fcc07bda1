"""Curve configurations over intersection lattices: moves, bounds and classification."""

from .census import CensusBounds, CensusReport, blowup_census, enumerate_configs, run_census
from .classify import Codim1Tag, classify_codim1, comb_structure, is_centered_graph
from .config import CurveConfiguration, Vertex, canonicalize, is_connected, is_nef_graph, is_tree, summarize
from .lattice import IntersectionLattice, adjunction, genus, j_dimension, pair, preset_lattice, signature
from .moves import Move, MoveKind, applicable_moves, apply_move
from .rearrange import check_genus_bound, is_rearranged, rearrange

__all__ = [
    "CensusBounds",
    "CensusReport",
    "Codim1Tag",
    "CurveConfiguration",
    "IntersectionLattice",
    "Move",
    "MoveKind",
    "Vertex",
    "adjunction",
    "applicable_moves",
    "apply_move",
    "blowup_census",
    "canonicalize",
    "check_genus_bound",
    "classify_codim1",
    "comb_structure",
    "enumerate_configs",
    "genus",
    "is_centered_graph",
    "is_connected",
    "is_nef_graph",
    "is_rearranged",
    "is_tree",
    "j_dimension",
    "pair",
    "preset_lattice",
    "rearrange",
    "signature",
    "summarize",
]
