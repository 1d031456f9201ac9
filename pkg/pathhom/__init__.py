"""
pathhom: exact path homology of finite digraphs.

Short-move classes, Omega_n bases over Q and GF(p), path homology and Euler
characteristics, and the integral structure of path cochains.
"""

from .chain_complex import (ChainVector, HomologySummary, OmegaBasis, boundary_matrix,
                            homology_summary, omega_class_basis, omega_general)
from .cochain_algebra import (CochainStructure, RelationSet, cochain_structure_classes,
                              cochain_structure_snf, pairing, relation_set, relation_set_general)
from .digraph_core import Digraph, classify_pairs, enumerate_paths, is_multisquare_free, parse_digraph
from .exact_linalg import F2, F3, Q, FieldDescriptor
from .fixtures import builtin_fixture
from .short_moves import build_smoves, classify_components

__version__ = "1.0.0"

__all__ = [
    "ChainVector", "CochainStructure", "Digraph", "F2", "F3", "FieldDescriptor", "HomologySummary",
    "OmegaBasis", "Q", "RelationSet", "boundary_matrix", "build_smoves", "builtin_fixture",
    "classify_components", "classify_pairs", "cochain_structure_classes", "cochain_structure_snf",
    "enumerate_paths", "homology_summary", "is_multisquare_free", "omega_class_basis",
    "omega_general", "pairing", "parse_digraph", "relation_set", "relation_set_general",
]
