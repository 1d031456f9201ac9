"""
Exact Linear Algebra Module
Row reduction, rank and kernels over Q and GF(p); Smith normal form and
cokernel structure over Z. Matrices are handed to sympy DomainMatrix over
QQ, GF(p) or ZZ; no floating point anywhere.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Optional, Sequence, Tuple

import pandas as pd
from sympy import isprime
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .config import settings
from .errors import DimensionMismatch, InvariantViolation

logger = logging.getLogger(__name__)

Scalar = Any  # Fraction over Q, int in [0, p) over GF(p)
Vector = Tuple[Scalar, ...]

_FIELD_PATTERN = re.compile(r"^(?:F|GF\(?|Z/)(\d+)\)?$", re.IGNORECASE)


@lru_cache(maxsize=None)
def _prime_field(p: int):
    return GF(p)


# =============================================================================
# FIELDS
# =============================================================================

@dataclass(frozen=True)
class FieldDescriptor:
    """Q (characteristic 0) or the prime field GF(p)."""
    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "prime":
            if self.p is None or not (2 <= self.p < 2 ** 31) or not isprime(self.p):
                raise ValueError(f"GF(p) needs a prime p < 2^31, got {self.p}")
        else:
            raise ValueError(f"unknown field kind: {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldDescriptor":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "FieldDescriptor":
        return cls("prime", int(p))

    @classmethod
    def parse(cls, text: str) -> "FieldDescriptor":
        """Accepts Q, F2, F3, Fp (any prime p), GF(p), GF p and Z/p."""
        token = text.strip().replace(" ", "")
        if token.upper() in ("Q", "QQ"):
            return cls.rational()
        match = _FIELD_PATTERN.match(token)
        if not match:
            raise ValueError(f"cannot parse field {text!r}; use Q, F2, Fp or GF(p)")
        return cls.prime(int(match.group(1)))

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"F{self.p}"

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def characteristic(self) -> int:
        return 0 if self.is_rational else self.p

    # --- arithmetic -------------------------------------------------------

    def coerce(self, value: Any) -> Scalar:
        """Map an int or Fraction into the field; raises ZeroDivisionError if p divides a denominator."""
        if self.is_rational:
            return Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def zero(self) -> Scalar:
        return self.coerce(0)

    def one(self) -> Scalar:
        return self.coerce(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.is_rational else (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.is_rational else (a - b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.is_rational else (a * b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.is_rational else (-a) % self.p

    # --- sympy domains ----------------------------------------------------

    @property
    def domain(self):
        return QQ if self.is_rational else _prime_field(self.p)

    def to_domain(self, a: Scalar):
        if self.is_rational:
            a = Fraction(a)
            return QQ(a.numerator, a.denominator)
        return self.domain(int(a))

    def from_domain(self, x) -> Scalar:
        if self.is_rational:
            return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))
        return int(x) % self.p

    def format(self, a: Scalar) -> str:
        return str(a)

    def is_canonical(self, a: Scalar) -> bool:
        if self.is_rational:
            return isinstance(a, Fraction) and a.denominator > 0
        return isinstance(a, int) and 0 <= a < self.p


Q = FieldDescriptor.rational()
F2 = FieldDescriptor.prime(2)
F3 = FieldDescriptor.prime(3)

# =============================================================================
# MATRICES
# =============================================================================

def _frame(entries: Sequence[Sequence[Any]], cols: int, row_labels, col_labels) -> pd.DataFrame:
    frame = pd.DataFrame([[str(x) for x in row] for row in entries],
                         columns=list(col_labels) if col_labels is not None else list(range(cols)))
    if row_labels is not None:
        frame.index = list(row_labels)
    return frame


def _domain_matrix(entries: Sequence[Sequence[Any]], shape: Tuple[int, int], domain, convert) -> DomainMatrix:
    return DomainMatrix([[convert(x) for x in row] for row in entries], shape, domain)


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Scalar, ...], ...]
    field: FieldDescriptor

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], field: FieldDescriptor,
                  cols: Optional[int] = None) -> "ExactMatrix":
        entries = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        width = cols if cols is not None else (len(entries[0]) if entries else 0)
        if any(len(row) != width for row in entries):
            raise DimensionMismatch("ragged matrix rows")
        return cls(len(entries), width, entries, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Any]], field: FieldDescriptor,
                     rows: int) -> "ExactMatrix":
        if any(len(col) != rows for col in columns):
            raise DimensionMismatch(f"every column must have {rows} entries")
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls.from_rows(data, field, cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldDescriptor) -> "ExactMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], field, cols=cols)

    @classmethod
    def identity(cls, size: int, field: FieldDescriptor) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], field, cols=size)

    @classmethod
    def from_domain(cls, dm: DomainMatrix, field: FieldDescriptor) -> "ExactMatrix":
        rows, cols = dm.shape
        entries = tuple(tuple(field.from_domain(x) for x in row) for row in dm.to_list())
        return cls(rows, cols, entries, field)

    def to_domain(self) -> DomainMatrix:
        return _domain_matrix(self.entries, self.shape, self.field.domain, self.field.to_domain)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           tuple(self.column(j) for j in range(self.cols)), self.field)

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.rows}x{self.cols} matrix")
        f = self.field
        if self.rows == 0 or self.cols == 0:
            return tuple(f.zero() for _ in range(self.rows))
        column = _domain_matrix([[f.coerce(x)] for x in vector], (self.cols, 1), f.domain, f.to_domain)
        return ExactMatrix.from_domain(self.to_domain() * column, f).column(0)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if 0 in (self.rows, self.cols, other.cols):
            return ExactMatrix.zeros(self.rows, other.cols, self.field)
        return ExactMatrix.from_domain(self.to_domain() * other.to_domain(), self.field)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def rref(self) -> Tuple[List[List[Scalar]], List[int]]:
        """Reduced row echelon form (as lists of scalars) and the pivot columns."""
        if self.rows == 0 or self.cols == 0:
            return [list(row) for row in self.entries], []
        reduced, pivots = self.to_domain().rref()
        return ([[self.field.from_domain(x) for x in row] for row in reduced.to_list()],
                list(pivots))

    def to_tsv(self, row_labels: Optional[Sequence[str]] = None,
               col_labels: Optional[Sequence[str]] = None) -> str:
        return _frame(self.entries, self.cols, row_labels, col_labels).to_csv(sep="\t")


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntegerMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        width = cols if cols is not None else (len(entries[0]) if entries else 0)
        if any(len(row) != width for row in entries):
            raise DimensionMismatch("ragged matrix rows")
        return cls(len(entries), width, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntegerMatrix":
        if any(len(col) != rows for col in columns):
            raise DimensionMismatch(f"every column must have {rows} entries")
        return cls.from_rows([[columns[j][i] for j in range(len(columns))] for i in range(rows)],
                             cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, size: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], cols=size)

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> "IntegerMatrix":
        rows, cols = dm.shape
        return cls.from_rows([[int(x) for x in row] for row in dm.to_list()], cols=cols)

    def to_domain(self) -> DomainMatrix:
        return _domain_matrix(self.entries, self.shape, ZZ, ZZ)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if 0 in (self.rows, self.cols, other.cols):
            return IntegerMatrix.zeros(self.rows, other.cols)
        return IntegerMatrix.from_domain(self.to_domain() * other.to_domain())

    def over(self, field: FieldDescriptor) -> ExactMatrix:
        """Image of the matrix under Z -> field."""
        return ExactMatrix.from_rows(self.entries, field, cols=self.cols)

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch(f"determinant of a non-square {self.shape} matrix")
        if self.rows == 0:
            return 1
        return int(self.to_domain().det())

    def diagonal(self) -> List[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def to_tsv(self, row_labels: Optional[Sequence[str]] = None,
               col_labels: Optional[Sequence[str]] = None) -> str:
        return _frame(self.entries, self.cols, row_labels, col_labels).to_csv(sep="\t")


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V == D with U, V unimodular and d_1 | d_2 | ... on the diagonal of D."""
    D: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    rank: int
    invariant_factors: Tuple[int, ...] = ()

    @property
    def torsion(self) -> List[int]:
        return [d for d in self.invariant_factors if d > 1]


# =============================================================================
# ROW REDUCTION
# =============================================================================

def _check_canonical(rows: Sequence[Sequence[Scalar]], f: FieldDescriptor) -> None:
    if not settings.CHECK_INVARIANTS:
        return
    for row in rows:
        for x in row:
            if not f.is_canonical(x):
                raise InvariantViolation(f"non-canonical scalar {x!r} over {f}")


def _check_rank_nullity(m: ExactMatrix, rank_: int, nullity: int) -> None:
    if settings.CHECK_INVARIANTS and rank_ + nullity != m.cols:
        raise InvariantViolation(f"rank-nullity fails for {m.rows}x{m.cols} matrix: "
                                 f"{rank_} + {nullity} != {m.cols}")


def rank(m: ExactMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    dm = m.to_domain()
    result = dm.rank()
    if settings.CHECK_INVARIANTS:
        _check_rank_nullity(m, result, dm.nullspace().shape[0])
    return result


def kernel_basis(m: ExactMatrix) -> List[Vector]:
    """
    Basis of {x : m x = 0}, one vector per free column in ascending order; the
    free coordinate is 1 and the other free coordinates are 0.
    """
    f = m.field
    reduced, pivots = m.rref()
    _check_canonical(reduced, f)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        x = [f.zero()] * m.cols
        x[free] = f.one()
        for r, c in enumerate(pivots):
            x[c] = f.neg(reduced[r][free])
        basis.append(tuple(x))

    if settings.CHECK_INVARIANTS:
        _check_rank_nullity(m, len(pivots), len(basis))
        for x in basis:
            if any(y != 0 for y in m.apply(x)):
                raise InvariantViolation("kernel vector does not map to zero")
    logger.debug(f"kernel of {m.rows}x{m.cols} over {f}: rank {len(pivots)}, nullity {len(basis)}")
    return basis


def span_rank(vectors: Sequence[Sequence[Scalar]], field: FieldDescriptor) -> int:
    if not vectors:
        return 0
    return rank(ExactMatrix.from_rows(vectors, field))


def _ambient_dimension(*groups: Sequence[Sequence[Scalar]]) -> Optional[int]:
    sizes = {len(v) for group in groups for v in group}
    if len(sizes) > 1:
        raise DimensionMismatch(f"vectors of different lengths: {sorted(sizes)}")
    return sizes.pop() if sizes else None


def reduced_span(vectors: Sequence[Sequence[Scalar]], field: FieldDescriptor) -> List[Vector]:
    """Nonzero rows of the RREF of the stacked vectors: a canonical basis of their span."""
    if not vectors:
        return []
    _ambient_dimension(vectors)
    reduced, pivots = ExactMatrix.from_rows(vectors, field).rref()
    return [tuple(reduced[r]) for r in range(len(pivots))]


def intersect_spans(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]],
                    field: FieldDescriptor) -> List[Vector]:
    """
    Basis of span(a) ∩ span(b): the kernel of [a | -b] (vectors as columns),
    mapped back through a and reduced.
    """
    dim = _ambient_dimension(a, b)
    if dim is None or not a or not b:
        return []
    columns = [list(v) for v in a] + [[field.neg(field.coerce(x)) for x in v] for v in b]
    stacked = ExactMatrix.from_columns(columns, field, dim)
    through_a = ExactMatrix.from_columns(a, field, dim)
    images = [through_a.apply(coefficients[:len(a)]) for coefficients in kernel_basis(stacked)]
    return reduced_span(images, field)


def solve(m: ExactMatrix, rhs: Sequence[Scalar]) -> Optional[Vector]:
    """One exact solution of m x = rhs (free variables set to zero), or None if inconsistent."""
    if len(rhs) != m.rows:
        raise DimensionMismatch(f"right-hand side of length {len(rhs)} for {m.rows} rows")
    f = m.field
    augmented = ExactMatrix.from_rows([list(row) + [y] for row, y in zip(m.entries, rhs)],
                                      f, cols=m.cols + 1)
    reduced, pivots = augmented.rref()
    if pivots and pivots[-1] == m.cols:
        return None
    x = [f.zero()] * m.cols
    for r, c in enumerate(pivots):
        x[c] = reduced[r][m.cols]
    return tuple(x)


def determinant(m: ExactMatrix) -> Scalar:
    if m.rows != m.cols:
        raise DimensionMismatch(f"determinant of a non-square {m.shape} matrix")
    if m.rows == 0:
        return m.field.one()
    return m.field.from_domain(m.to_domain().det())


# =============================================================================
# SMITH NORMAL FORM
# =============================================================================

def _verify_smith(a: IntegerMatrix, form: SmithForm) -> None:
    if (form.U @ a @ form.V) != form.D:
        raise InvariantViolation("U*A*V differs from D")
    for i in range(form.D.rows):
        for j in range(form.D.cols):
            if i != j and form.D.entries[i][j] != 0:
                raise InvariantViolation(f"D has off-diagonal entry at ({i}, {j})")
    factors = form.invariant_factors
    for d, e in zip(factors, factors[1:]):
        if e % d:
            raise InvariantViolation(f"divisibility chain broken: {d} does not divide {e}")
    if abs(form.U.determinant()) != 1 or abs(form.V.determinant()) != 1:
        raise InvariantViolation("U or V is not unimodular")


def smith_normal_form(a: IntegerMatrix) -> SmithForm:
    if a.rows == 0 or a.cols == 0:
        return SmithForm(D=a, U=IntegerMatrix.identity(a.rows), V=IntegerMatrix.identity(a.cols), rank=0)

    d, u, v = smith_normal_decomp(a.to_domain())
    D = [[int(x) for x in row] for row in d.to_dense().to_list()]
    U = [[int(x) for x in row] for row in u.to_dense().to_list()]
    # keep the diagonal non-negative; the sign goes into U
    for i in range(min(a.rows, a.cols)):
        if D[i][i] < 0:
            D[i] = [-x for x in D[i]]
            U[i] = [-x for x in U[i]]

    factors = tuple(x for x in (D[i][i] for i in range(min(a.rows, a.cols))) if x)
    form = SmithForm(
        D=IntegerMatrix.from_rows(D, cols=a.cols),
        U=IntegerMatrix.from_rows(U, cols=a.rows),
        V=IntegerMatrix.from_domain(v.to_dense()),
        rank=len(factors),
        invariant_factors=factors,
    )
    if settings.CHECK_INVARIANTS:
        _verify_smith(a, form)
    logger.debug(f"SNF of {a.rows}x{a.cols}: rank {form.rank}, factors {list(factors)}")
    return form


def cokernel_structure(a: IntegerMatrix) -> Tuple[int, List[int]]:
    """Z^rows / colspan(a) = Z^free_rank + sum of Z/d_i Z over the returned torsion."""
    if a.cols == 0 or a.rows == 0:
        return a.rows, []
    form = smith_normal_form(a)
    return a.rows - form.rank, form.torsion
