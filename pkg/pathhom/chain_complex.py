"""
Chain Complex Module
Omega_n(G; F) computed two ways (the general kernel definition and the short-move
class basis for multisquare-free digraphs), boundary matrices between Omega
bases, path homology dimensions and the path Euler characteristic.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .config import settings
from .digraph_core import (INFINITY, Digraph, Path, enumerate_paths, is_multisquare_free,
                           longest_path_length, path_index, require_multisquare_free)
from .errors import DimensionMismatch, InvariantViolation, MethodDisagreement, NotInSpan
from .exact_linalg import (ExactMatrix, FieldDescriptor, Scalar, Vector, intersect_spans,
                           kernel_basis, rank, solve, span_rank)
from .schemas import BoundaryEntryLevel, BoundaryEntryReport, HomologyReport
from .short_moves import SnClass, build_smoves, classify_components

logger = logging.getLogger(__name__)

GENERAL = "general"
CLASS_BASIS = "class_basis"


# =============================================================================
# TYPES
# =============================================================================

@dataclass(frozen=True)
class ChainVector:
    """Sparse element of A_n: (path index, coefficient) pairs sorted by index, no zeros."""
    level: int
    terms: Tuple[Tuple[int, Scalar], ...]
    field: FieldDescriptor

    @classmethod
    def from_dense(cls, level: int, dense: Sequence[Scalar], field: FieldDescriptor) -> "ChainVector":
        return cls(level, tuple((i, x) for i, x in enumerate(dense) if x != 0), field)

    @classmethod
    def from_mapping(cls, level: int, coefficients: Dict[int, Scalar],
                     field: FieldDescriptor) -> "ChainVector":
        items = ((i, field.coerce(x)) for i, x in sorted(coefficients.items()))
        return cls(level, tuple((i, x) for i, x in items if x != 0), field)

    def coefficient(self, index: int) -> Scalar:
        for i, x in self.terms:
            if i == index:
                return x
        return self.field.zero()

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.terms)

    def dense(self, size: int) -> Vector:
        out = [self.field.zero()] * size
        for i, x in self.terms:
            if i >= size:
                raise DimensionMismatch(f"path index {i} out of range for {size} paths")
            out[i] = x
        return tuple(out)

    def describe(self, g: Digraph) -> str:
        """Signed sum such as 'e_013 - e_023'."""
        if not self.terms:
            return "0"
        paths = enumerate_paths(g, self.level)
        pieces = []
        for k, (i, x) in enumerate(self.terms):
            value = x
            if not self.field.is_rational and x * 2 > self.field.p:
                value = x - self.field.p
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            coeff = "" if magnitude == 1 else f"{magnitude}*"
            term = f"{coeff}e_{g.format_path(paths[i])}"
            if k == 0:
                pieces.append(f"-{term}" if sign == "-" else term)
            else:
                pieces.append(f"{sign} {term}")
        return " ".join(pieces)


@dataclass(frozen=True)
class OmegaBasis:
    level: int
    vectors: Tuple[ChainVector, ...]
    method: str
    field: FieldDescriptor
    class_tags: Optional[Tuple[int, ...]] = None  # representative path index per vector

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def dense_vectors(self, size: int) -> List[Vector]:
        return [v.dense(size) for v in self.vectors]


@dataclass(frozen=True)
class HomologySummary:
    field: FieldDescriptor
    omega_dims: Tuple[int, ...]
    boundary_ranks: Tuple[int, ...]  # rank of d_n : Omega_n -> Omega_{n-1}; index 0 is 0
    ph_dims: Tuple[int, ...]
    bounded: bool
    euler: Optional[int]
    method_agreement: Optional[bool] = None

    def to_report(self) -> HomologyReport:
        return HomologyReport(
            field=str(self.field),
            omega_dims=list(self.omega_dims),
            boundary_ranks=list(self.boundary_ranks),
            ph_dims=list(self.ph_dims),
            euler=self.euler,
            bounded=self.bounded,
            method_agreement=self.method_agreement,
        )


# =============================================================================
# FACES
# =============================================================================

def faces(path: Path) -> List[Tuple[int, Tuple[int, ...], bool]]:
    """
    Non-degenerate faces of an n-path as (sign, tuple, interior) with sign (-1)^i.
    Removing an interior vertex with p_{i-1} = p_{i+1} gives a degenerate tuple,
    which is zero in the regular complex and is skipped.
    """
    n = len(path) - 1
    out = []
    for i in range(n + 1):
        interior = 0 < i < n
        if interior and path[i - 1] == path[i + 1]:
            continue
        out.append((1 if i % 2 == 0 else -1, path[:i] + path[i + 1:], interior))
    return out


def _expand_boundary(g: Digraph, v: ChainVector) -> Tuple[Dict[int, Scalar], Dict[Tuple[int, ...], Scalar]]:
    """d(v) split into (n-1)-path coordinates and coordinates on non-path tuples."""
    f = v.field
    paths = enumerate_paths(g, v.level)
    lower = path_index(g, v.level - 1)
    on_paths: Dict[int, Scalar] = {}
    off_paths: Dict[Tuple[int, ...], Scalar] = {}
    for i, x in v.terms:
        for sign, face, _ in faces(paths[i]):
            term = x if sign > 0 else f.neg(x)
            if face in lower:
                key = lower[face]
                on_paths[key] = f.add(on_paths.get(key, f.zero()), term)
            else:
                off_paths[face] = f.add(off_paths.get(face, f.zero()), term)
    on_paths = {k: x for k, x in on_paths.items() if x != 0}
    off_paths = {k: x for k, x in off_paths.items() if x != 0}
    return on_paths, off_paths


def boundary_of(g: Digraph, v: ChainVector) -> ChainVector:
    """d(v) as an (n-1)-chain; raises NotInSpan if it leaves A_{n-1}."""
    if v.level == 0:
        return ChainVector(-1, (), v.field)
    on_paths, off_paths = _expand_boundary(g, v)
    if off_paths:
        bad = next(iter(sorted(off_paths)))
        raise NotInSpan(f"boundary has a nonzero coordinate on the non-path tuple "
                        f"{g.format_path(bad)}")
    return ChainVector.from_mapping(v.level - 1, on_paths, v.field)


def is_omega_member(g: Digraph, v: ChainVector) -> bool:
    if v.level <= 1:
        return True
    _, off_paths = _expand_boundary(g, v)
    return not off_paths


# =============================================================================
# OMEGA BASES
# =============================================================================

def omega_general(g: Digraph, n: int, f: FieldDescriptor) -> OmegaBasis:
    """
    Kernel of the projection of d onto non-path tuples. Rows of the constraint
    matrix are the non-path faces of n-paths in lexicographic order; columns
    are the n-paths. Valid for any digraph.
    """
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")

    def build() -> OmegaBasis:
        paths = enumerate_paths(g, n)
        constraints: Dict[Tuple[int, ...], Dict[int, int]] = {}
        for col, path in enumerate(paths):
            for sign, face, interior in faces(path):
                if interior and not _is_path(g, face):
                    constraints.setdefault(face, {})[col] = sign
        row_keys = sorted(constraints)
        matrix = ExactMatrix.from_rows(
            [[constraints[key].get(col, 0) for col in range(len(paths))] for key in row_keys],
            f, cols=len(paths))
        vectors = tuple(ChainVector.from_dense(n, x, f) for x in kernel_basis(matrix))
        logger.debug(f"Omega_{n} over {f}: {len(paths)} paths, {len(row_keys)} non-path faces, "
                     f"dimension {len(vectors)}")
        return OmegaBasis(n, vectors, GENERAL, f)

    return g.memo(("omega_general", n, f), build)


def _is_path(g: Digraph, tup: Tuple[int, ...]) -> bool:
    return all(g.has_arrow(a, b) for a, b in zip(tup, tup[1:]))


def omega_class_basis(g: Digraph, n: int, f: FieldDescriptor,
                      classes: Optional[Sequence[SnClass]] = None) -> OmegaBasis:
    """
    Dual basis from S_n-classes: s'_c = sum of c for every thick class in
    characteristic 2, s_c = sum c+ - sum c- for every thick bipartite class otherwise.
    """
    require_multisquare_free(g)
    if classes is None:
        classes = classify_components(build_smoves(g, n), g)

    vectors, tags = [], []
    for cls in classes:
        if cls.is_thin:
            continue
        if f.characteristic == 2:
            coefficients = {node: 1 for node in cls.members}
        elif cls.is_bipartite:
            coefficients = {node: cls.sign(node) for node in cls.members}
        else:
            continue
        vectors.append(ChainVector.from_mapping(n, coefficients, f))
        tags.append(cls.representative)
    return OmegaBasis(n, tuple(vectors), CLASS_BASIS, f, tuple(tags))


def omega_dimension_from_classes(classes: Sequence[SnClass], f: FieldDescriptor) -> int:
    if f.characteristic == 2:
        return sum(1 for c in classes if c.is_thick)
    return sum(1 for c in classes if c.is_thick and c.is_bipartite)


def spans_agree(a: OmegaBasis, b: OmegaBasis, size: int) -> bool:
    """Same dimension, both independent, and each span contains the other."""
    if a.field != b.field or a.level != b.level:
        raise DimensionMismatch("bases live at different levels or over different fields")
    if a.dimension != b.dimension:
        return False
    if a.dimension == 0:
        return True
    va, vb = a.dense_vectors(size), b.dense_vectors(size)
    if span_rank(va, a.field) != a.dimension or span_rank(vb, b.field) != b.dimension:
        return False
    return len(intersect_spans(va, vb, a.field)) == a.dimension


# =============================================================================
# BOUNDARY MATRICES
# =============================================================================

def boundary_matrix(g: Digraph, n: int, f: FieldDescriptor,
                    domain: OmegaBasis, codomain: Optional[OmegaBasis]) -> ExactMatrix:
    """Matrix of d : Omega_n -> Omega_{n-1} in the given bases, solved exactly column by column."""
    if domain.level != n:
        raise DimensionMismatch(f"domain basis is at level {domain.level}, expected {n}")
    if n == 0:
        return ExactMatrix.zeros(0, domain.dimension, f)
    if codomain is None or codomain.level != n - 1:
        raise DimensionMismatch(f"codomain basis must be at level {n - 1}")
    if domain.field != f or codomain.field != f:
        raise DimensionMismatch("bases are over a different field")

    size = len(enumerate_paths(g, n - 1))
    target = ExactMatrix.from_columns(codomain.dense_vectors(size), f, size)
    columns = []
    for k, v in enumerate(domain.vectors):
        image = boundary_of(g, v).dense(size)
        x = solve(target, image)
        if x is None:
            raise NotInSpan(f"boundary of basis vector {k} at level {n} is outside the codomain span")
        columns.append(x)
    return ExactMatrix.from_columns(columns, f, codomain.dimension)


# =============================================================================
# HOMOLOGY
# =============================================================================

def default_n_max(g: Digraph) -> int:
    longest = longest_path_length(g)
    if longest == INFINITY:
        return settings.LEVEL_CAP
    return max(1, min(int(longest) + 1, settings.LEVEL_CAP))


def _class_method_check(g: Digraph, n: int, general: OmegaBasis) -> OmegaBasis:
    classes = omega_class_basis(g, n, general.field)
    size = len(enumerate_paths(g, n))
    if not spans_agree(general, classes, size):
        raise MethodDisagreement(
            f"Omega_{n} over {general.field}: general dimension {general.dimension}, "
            f"class basis dimension {classes.dimension}, spans differ")
    return classes


def homology_summary(g: Digraph, f: FieldDescriptor, n_max: Optional[int] = None) -> HomologySummary:
    """
    Omega dimensions, boundary ranks and PH dimensions for n <= n_max. The complex
    is bounded at the first level with Omega_n = 0; the lists then stop there.
    When the digraph is multisquare-free the class basis is rebuilt at every
    level and must span the same space as the general basis.
    """
    if n_max is None:
        n_max = default_n_max(g)
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")

    check_classes = is_multisquare_free(g)[0]
    bases: List[OmegaBasis] = []
    bounded = False
    for n in range(n_max + 2):
        basis = omega_general(g, n, f)
        if check_classes:
            _class_method_check(g, n, basis)
        bases.append(basis)
        if basis.dimension == 0:
            bounded = n <= n_max
            break
        if n == n_max + 1:
            break

    ranks = [0]
    for n in range(1, len(bases)):
        matrix = boundary_matrix(g, n, f, bases[n], bases[n - 1])
        ranks.append(rank(matrix))
        if settings.CHECK_INVARIANTS and n >= 2:
            lower = boundary_matrix(g, n - 1, f, bases[n - 1], bases[n - 2])
            if not (lower @ matrix).is_zero():
                raise InvariantViolation(f"d_{n - 1} d_{n} is not zero over {f}")

    top = len(bases) - 1 if bounded else n_max
    omega_dims = [bases[n].dimension for n in range(top + 1)]
    boundary_ranks = ranks[:top + 1]
    ph_dims = [omega_dims[n] - ranks[n] - (ranks[n + 1] if n + 1 < len(ranks) else 0)
               for n in range(top + 1)]

    euler = None
    if bounded:
        euler = sum((-1) ** n * d for n, d in enumerate(omega_dims))
        if settings.CHECK_INVARIANTS and euler != sum((-1) ** n * d for n, d in enumerate(ph_dims)):
            raise InvariantViolation("Euler characteristic differs between Omega and PH dimensions")

    logger.info(f"Homology over {f}: omega {omega_dims}, ph {ph_dims}, "
                f"euler {euler if bounded else 'undefined'}")
    return HomologySummary(f, tuple(omega_dims), tuple(boundary_ranks), tuple(ph_dims),
                           bounded, euler, True if check_classes else None)


def euler_from_classes(g: Digraph, f: FieldDescriptor, n_max: Optional[int] = None) -> Optional[int]:
    """Alternating sum of class counts N_n (or N'_n in characteristic 2) up to the first zero."""
    require_multisquare_free(g)
    if n_max is None:
        n_max = default_n_max(g)
    total = 0
    for n in range(n_max + 1):
        count = omega_dimension_from_classes(classify_components(build_smoves(g, n), g), f)
        if count == 0:
            return total
        total += (-1) ** n * count
    return None


def _is_unit(x: Scalar, f: FieldDescriptor) -> bool:
    return x == f.one() or x == f.neg(f.one())


def boundary_entry_report(g: Digraph, f: FieldDescriptor, n_max: Optional[int] = None) -> BoundaryEntryReport:
    """Nonzero entries of every boundary matrix between class bases; flags entries other than +1 and -1."""
    require_multisquare_free(g)
    if n_max is None:
        n_max = default_n_max(g)
    levels = []
    previous = omega_class_basis(g, 0, f)
    for n in range(1, n_max + 1):
        current = omega_class_basis(g, n, f)
        matrix = boundary_matrix(g, n, f, current, previous)
        counts = Counter(f.format(x) for row in matrix.entries for x in row if x != 0)
        non_unit = any(x != 0 and not _is_unit(x, f) for row in matrix.entries for x in row)
        if non_unit:
            logger.warning(f"Non-unit boundary entry at level {n} over {f}: {dict(counts)}")
        levels.append(BoundaryEntryLevel(level=n, entries=dict(sorted(counts.items())),
                                         non_unit=non_unit))
        if current.dimension == 0:
            break
        previous = current
    return BoundaryEntryReport(field=str(f), levels=levels,
                               all_unit=not any(level.non_unit for level in levels))
