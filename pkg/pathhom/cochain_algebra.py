"""
Cochain Algebra Module
The quotient presentation of path cochains: generators of the degree-n relation
module T^n, the integral structure of Omega^n(G; Z) by Smith normal form and
by short-move classes, and the Kronecker pairing against chain bases.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .chain_complex import ChainVector
from .digraph_core import (Digraph, Path, enumerate_paths, is_multisquare_free, is_thin_path,
                           pair_lookup, path_index, require_multisquare_free)
from .errors import DimensionMismatch, LevelMismatch
from .exact_linalg import FieldDescriptor, IntegerMatrix, Scalar, cokernel_structure, rank
from .schemas import CochainReport
from .short_moves import SnClass, build_smoves, classify_components

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelationSet:
    """Generators of T^n for a multisquare-free digraph: q + q' per short move, and each thin path."""
    level: int
    num_paths: int
    thick_relations: Tuple[Tuple[int, int], ...]
    thin_relations: Tuple[int, ...]

    def to_matrix(self) -> IntegerMatrix:
        columns = []
        for a, b in self.thick_relations:
            column = [0] * self.num_paths
            column[a] += 1
            column[b] += 1
            columns.append(column)
        for p in self.thin_relations:
            column = [0] * self.num_paths
            column[p] = 1
            columns.append(column)
        return IntegerMatrix.from_columns(columns, self.num_paths)


@dataclass(frozen=True)
class CochainStructure:
    """Omega^n(G; Z) = Z^free_rank + sum of Z/d Z over torsion."""
    level: int
    free_rank: int
    torsion: Tuple[int, ...]
    free_representatives: Tuple[int, ...] = ()
    torsion_representatives: Tuple[int, ...] = ()

    def same_structure(self, other: "CochainStructure") -> bool:
        return self.free_rank == other.free_rank and sorted(self.torsion) == sorted(other.torsion)

    def describe(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}Z" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_report(self, g: Digraph, method_agreement: Optional[bool] = None) -> CochainReport:
        paths = enumerate_paths(g, self.level)
        return CochainReport(
            level=self.level,
            free_rank=self.free_rank,
            torsion=list(self.torsion),
            representatives=[g.format_path(paths[i]) for i in self.free_representatives],
            torsion_representatives=[g.format_path(paths[i]) for i in self.torsion_representatives],
            method_agreement=method_agreement,
        )


# =============================================================================
# RELATIONS
# =============================================================================

def relation_set(g: Digraph, n: int) -> RelationSet:
    require_multisquare_free(g)
    smg = build_smoves(g, n)
    thin = tuple(i for i, path in enumerate(smg.nodes) if is_thin_path(g, path))
    return RelationSet(n, smg.num_nodes, tuple((a, b) for a, b, _ in smg.edges), thin)


def relation_set_general(g: Digraph, n: int) -> IntegerMatrix:
    """
    Columns are the distinct products a * t_{x,y} * b of degree n, where t_{x,y}
    is the sum of all 2-paths from x to y for a pair at distance two. Each is
    found from an n-path carrying (x, v, y) at positions j-1, j, j+1.
    """
    paths = enumerate_paths(g, n)
    index = path_index(g, n)
    pairs = pair_lookup(g)

    seen = set()
    columns: List[List[int]] = []
    for path in paths:
        for j in range(1, n):
            pair = pairs.get((path[j - 1], path[j + 1]))
            if pair is None:
                continue
            key = (j, path[:j], path[j + 1:])
            if key in seen:
                continue
            seen.add(key)
            column = [0] * len(paths)
            for v in pair.midpoints:
                column[index[path[:j] + (v,) + path[j + 1:]]] += 1
            columns.append(column)
    logger.debug(f"T^{n}: {len(columns)} relations on {len(paths)} paths")
    return IntegerMatrix.from_columns(columns, len(paths))


def cochain_dimension(g: Digraph, n: int, f: FieldDescriptor) -> int:
    """dim Omega^n(G; f) = #n-paths - rank of the relations over f."""
    relations = relation_set_general(g, n)
    if relations.cols == 0:
        return relations.rows
    return relations.rows - rank(relations.over(f))


# =============================================================================
# STRUCTURE
# =============================================================================

def _class_representatives(classes: Sequence[SnClass]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    free = tuple(c.representative for c in classes if c.is_thick and c.is_bipartite)
    torsion = tuple(c.representative for c in classes if c.is_thick and not c.is_bipartite)
    return free, torsion


def cochain_structure_snf(g: Digraph, n: int) -> CochainStructure:
    """Cokernel of the general relation matrix; representatives only when the digraph is multisquare-free."""
    free_rank, torsion = cokernel_structure(relation_set_general(g, n))
    free_reps, torsion_reps = (), ()
    if is_multisquare_free(g)[0]:
        free_reps, torsion_reps = _class_representatives(classify_components(build_smoves(g, n), g))
    return CochainStructure(n, free_rank, tuple(torsion), free_reps, torsion_reps)


def cochain_structure_classes(g: Digraph, n: int,
                              classes: Optional[Sequence[SnClass]] = None) -> CochainStructure:
    """Z for every thick bipartite class, Z/2Z for every thick non-bipartite class."""
    require_multisquare_free(g)
    if classes is None:
        classes = classify_components(build_smoves(g, n), g)
    free_reps, torsion_reps = _class_representatives(classes)
    return CochainStructure(n, len(free_reps), (2,) * len(torsion_reps), free_reps, torsion_reps)


# =============================================================================
# PAIRING
# =============================================================================

def pairing(v: ChainVector, q: Path, g: Digraph) -> Scalar:
    """<sum a_p e_p, q + T> = a_q."""
    level = len(q) - 1
    if level != v.level:
        raise LevelMismatch(f"chain at level {v.level} paired with a {level}-path")
    index = path_index(g, level)
    if q not in index:
        raise ValueError(f"{g.format_path(q)} is not a {level}-path")
    return v.coefficient(index[q])


def pairing_with_relation(v: ChainVector, column: Sequence[int]) -> Scalar:
    """Pairing of a chain with a relation column sum c_q q: sum of a_q * c_q."""
    f = v.field
    total = f.zero()
    for i, x in v.terms:
        if i >= len(column):
            raise DimensionMismatch(f"path index {i} outside a relation of length {len(column)}")
        if column[i]:
            total = f.add(total, f.mul(x, f.coerce(column[i])))
    return total


def duality_matrix(vectors: Sequence[ChainVector], representatives: Sequence[Path],
                   g: Digraph) -> List[List[Scalar]]:
    """Pairings <v_i, r_j>; the identity when the chain basis and the representatives are dual."""
    return [[pairing(v, r, g) for r in representatives] for v in vectors]


def structure_census(g: Digraph, n: int) -> Dict[str, object]:
    """Both structures of Omega^n(G; Z) side by side, for reporting."""
    snf = cochain_structure_snf(g, n)
    if not is_multisquare_free(g)[0]:
        return {'snf': snf, 'classes': None, 'agree': None}
    classes = cochain_structure_classes(g, n)
    agree = snf.same_structure(classes)
    if not agree:
        logger.error(f"Omega^{n}(G; Z): SNF gives {snf.describe()}, classes give {classes.describe()}")
    return {'snf': snf, 'classes': classes, 'agree': agree}
