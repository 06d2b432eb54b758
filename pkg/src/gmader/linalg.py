"""Exact linear algebra over Q and over prime fields F_p.

Scalars are plain Python values: `fractions.Fraction` over Q (always in
lowest terms with positive denominator) and canonical ints in [0, p) over
F_p.  A `Field` object supplies inversion, parsing and canonical reduction;
addition and multiplication go through the native operators, with
`Field.reduce` applied once after accumulation loops.  All containers are
tuples, so every value in this module is immutable and freely shareable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class LinAlgError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Arithmetic strategy for one coefficient field."""

    char: int = 0
    zero = None
    one = None

    def reduce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, x, y):
        return self.reduce(x * self.inv(y))

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError


class RationalField(Field):
    """The rationals, carried by fractions.Fraction."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def reduce(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def parse(self, text: str):
        return Fraction(text)

    def format(self, x) -> str:
        return str(x)

    def spec(self) -> dict:
        return {"kind": "Q"}

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    """F_p with elements stored as canonical ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise LinAlgError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def parse(self, text: str):
        return int(text, 10) % self.p

    def format(self, x) -> str:
        return str(x % self.p)

    def spec(self) -> dict:
        return {"kind": "Fp", "p": self.p}

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


def field_from_spec(spec: dict) -> Field:
    kind = spec.get("kind")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(int(spec["p"]))
    raise LinAlgError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# vectors (plain tuples)
# ---------------------------------------------------------------------------

def zero_vector(field: Field, n: int) -> tuple:
    return (field.zero,) * n

def unit_vector(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one if j == i else field.zero for j in range(n))

def vec_add(field: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.reduce(a + b) for a, b in zip(u, v))

def vec_sub(field: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.reduce(a - b) for a, b in zip(u, v))

def vec_scale(field: Field, c, u: Sequence) -> tuple:
    return tuple(field.reduce(c * a) for a in u)

def vec_neg(field: Field, u: Sequence) -> tuple:
    return tuple(field.reduce(-a) for a in u)

def is_zero_vector(u: Sequence) -> bool:
    return all(a == 0 for a in u)


class Matrix:
    """Dense matrix with immutable row tuples.

    `cols` must be passed explicitly for matrices with zero rows, so that
    degenerate blocks keep their shape.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: Iterable[Sequence], cols: Optional[int] = None):
        self.field = field
        self.data = tuple(tuple(row) for row in data)
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else (cols or 0)
        for row in self.data:
            if len(row) != self.cols:
                raise LinAlgError("ragged rows")

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [unit_vector(field, n, i) for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, [zero_vector(field, cols)] * rows, cols=cols)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence],
                     rows: Optional[int] = None) -> "Matrix":
        if not cols:
            return cls(field, [()] * (rows or 0))
        n = len(cols[0])
        return cls(field, [tuple(c[i] for c in cols) for i in range(n)],
                   cols=len(cols))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise LinAlgError(f"apply: {self.cols} cols vs vector of length {len(v)}")
        red = self.field.reduce
        return tuple(red(sum(a * b for a, b in zip(row, v))) for row in self.data)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinAlgError("matmul: dimension mismatch")
        red = self.field.reduce
        if other.cols == 0 or self.rows == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        cols = list(zip(*other.data))
        return Matrix(self.field,
                      [tuple(red(sum(a * b for a, b in zip(row, col))) for col in cols)
                       for row in self.data], cols=other.cols)

    def add(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        red = self.field.reduce
        return Matrix(self.field,
                      [tuple(red(a + b) for a, b in zip(r1, r2))
                       for r1, r2 in zip(self.data, other.data)], cols=self.cols)

    def sub(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        red = self.field.reduce
        return Matrix(self.field,
                      [tuple(red(a - b) for a, b in zip(r1, r2))
                       for r1, r2 in zip(self.data, other.data)], cols=self.cols)

    def scale(self, c) -> "Matrix":
        red = self.field.reduce
        return Matrix(self.field, [tuple(red(c * a) for a in row) for row in self.data],
                      cols=self.cols)

    def neg(self) -> "Matrix":
        red = self.field.reduce
        return Matrix(self.field, [tuple(red(-a) for a in row) for row in self.data],
                      cols=self.cols)

    def transpose(self) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return Matrix(self.field, [()] * self.cols, cols=self.rows)
        return Matrix(self.field, list(zip(*self.data)), cols=self.rows)

    def submatrix(self, row_range: range, col_range: range) -> "Matrix":
        return Matrix(self.field,
                      [tuple(self.data[i][j] for j in col_range) for i in row_range],
                      cols=len(col_range))

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.data)

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise LinAlgError("shape mismatch")

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.field, self.cols, self.data))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def stack(matrices: Sequence[Matrix]) -> Matrix:
    """Vertical concatenation."""
    mats = [m for m in matrices if m.rows > 0]
    if not mats:
        return matrices[0]
    cols = mats[0].cols
    rows = []
    for m in mats:
        if m.cols != cols:
            raise LinAlgError("stack: column mismatch")
        rows.extend(m.data)
    return Matrix(mats[0].field, rows)


def block_matrix(field: Field, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a matrix from a grid of blocks (row-consistent heights)."""
    rows = []
    for block_row in blocks:
        height = block_row[0].rows
        for r in range(height):
            row = []
            for b in block_row:
                if b.rows != height:
                    raise LinAlgError("block height mismatch")
                row.extend(b.data[r])
            rows.append(tuple(row))
    return Matrix(field, rows)


# ---------------------------------------------------------------------------
# Gaussian elimination
# ---------------------------------------------------------------------------

def _rref(field: Field, rows: list) -> tuple[list, list]:
    """In-place reduced row echelon form; returns (nonzero rows, pivot cols)."""
    if not rows:
        return [], []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.reduce(inv * x) for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [field.reduce(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return [rows[i] for i in range(len(pivots))], pivots


class Subspace:
    """A subspace of F^n carried by its reduced-echelon basis."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.ambient = ambient
        rows = [list(v) for v in vectors]
        for row in rows:
            if len(row) != ambient:
                raise LinAlgError("ambient dimension mismatch")
        basis, pivots = _rref(field, rows)
        self.basis = tuple(tuple(v) for v in basis)
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.reduce(v))

    def reduce(self, v: Sequence) -> tuple:
        """Residue of v after elimination against the basis."""
        if len(v) != self.ambient:
            raise LinAlgError("ambient dimension mismatch")
        red = self.field.reduce
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c != 0:
                w = [red(a - c * b) for a, b in zip(w, row)]
        return tuple(w)

    def coordinates(self, v: Sequence) -> Optional[tuple]:
        """Coefficients of v in the stored basis, or None if v is outside."""
        red = self.field.reduce
        w = list(v)
        coeffs = []
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            coeffs.append(red(c))
            if c != 0:
                w = [red(a - c * b) for a, b in zip(w, row)]
        if not is_zero_vector(w):
            return None
        return tuple(coeffs)

    def constraint_matrix(self) -> Matrix:
        """A matrix whose kernel is exactly this subspace."""
        if self.dim == 0:
            return Matrix.identity(self.field, self.ambient)
        ker = kernel(Matrix(self.field, self.basis))
        if ker.dim == 0:
            return Matrix.zeros(self.field, 1, self.ambient)
        return Matrix(self.field, ker.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient})"


def span(field: Field, ambient: int, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace(field, ambient, vectors)


@dataclass(frozen=True)
class AffineSolutionSet:
    """Particular solution plus the homogeneous kernel."""
    particular: tuple
    homogeneous: Subspace

    @property
    def unique(self) -> bool:
        return self.homogeneous.dim == 0


def solve(a: Matrix, b: Sequence) -> Optional[AffineSolutionSet]:
    """All solutions of a.x = b, or None when the system is inconsistent."""
    if len(b) != a.rows:
        raise LinAlgError(f"solve: {a.rows} rows vs rhs of length {len(b)}")
    field = a.field
    aug = [list(row) + [bi] for row, bi in zip(a.data, b)]
    if not aug:
        return AffineSolutionSet(zero_vector(field, a.cols),
                                 _full_space(field, a.cols))
    rows, pivots = _rref(field, aug)
    for row, p in zip(rows, pivots):
        if p == a.cols:  # pivot in the rhs column
            return None
    particular = [field.zero] * a.cols
    for row, p in zip(rows, pivots):
        particular[p] = row[-1]
    return AffineSolutionSet(tuple(particular), kernel(a))


def kernel(a: Matrix) -> Subspace:
    """Null space of a."""
    field = a.field
    if a.rows == 0:
        return _full_space(field, a.cols)
    rows = [list(row) for row in a.data]
    rref_rows, pivots = _rref(field, rows)
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    basis = []
    red = field.reduce
    for f in free:
        v = [field.zero] * a.cols
        v[f] = field.one
        for row, p in zip(rref_rows, pivots):
            v[p] = red(-row[f])
        basis.append(v)
    return Subspace(field, a.cols, basis)


def _full_space(field: Field, n: int) -> Subspace:
    return Subspace(field, n, [unit_vector(field, n, i) for i in range(n)])


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    if u.ambient != v.ambient or u.field != v.field:
        raise LinAlgError("intersect: ambient mismatch")
    return kernel(stack([u.constraint_matrix(), v.constraint_matrix()]))


def rank(a: Matrix) -> int:
    rows = [list(row) for row in a.data]
    _, pivots = _rref(a.field, rows)
    return len(pivots)
