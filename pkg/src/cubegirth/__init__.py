"""Median graphs, halfspace combinatorics and girth certificates for groups acting on them."""

__version__ = "0.1.0"

from .core import CubeComplexGraph, validate_median, link_is_flag, hypercube, cycle_graph, grid
from .halfspaces import Halfspace, Pocset, hyperplanes, pocset_of, dual_complex, is_strongly_separated
from .lazy import FreeProductTree, ProductComplex
from .actions import GroupAction, tree_action, permutation_action, find_flipper, double_skewers
from .girth import PermGroup, girth_cayley, check_law
from .amplify import amplify_facing, verify_family
from .pingpong import check_girth_cert, build_cert_from_poles
from .constructions import build_line_complex, WreathGroup, wreath_demo

__all__ = [
    "CubeComplexGraph", "validate_median", "link_is_flag", "hypercube", "cycle_graph", "grid",
    "Halfspace", "Pocset", "hyperplanes", "pocset_of", "dual_complex", "is_strongly_separated",
    "FreeProductTree", "ProductComplex",
    "GroupAction", "tree_action", "permutation_action", "find_flipper", "double_skewers",
    "PermGroup", "girth_cayley", "check_law",
    "amplify_facing", "verify_family",
    "check_girth_cert", "build_cert_from_poles",
    "build_line_complex", "WreathGroup", "wreath_demo",
]
