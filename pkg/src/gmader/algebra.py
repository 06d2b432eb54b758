"""Finite-dimensional unital associative algebras given by structure constants.

An algebra of dimension d over a field F is a basis e_0..e_{d-1}, a unit
vector, and a tensor c with c[i][j] = coordinate vector of e_i * e_j.
Elements are plain coordinate tuples; `AlgebraElement` wraps one together
with its owning algebra for ownership-checked arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .linalg import (
    Field, Matrix, Subspace, kernel, stack, is_zero_vector,
    unit_vector, zero_vector,
)


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Trivalent:
    """A yes/no/unknown answer, with a witness for "no" and a reason otherwise."""
    status: str  # "yes" | "no" | "unknown"
    witness: Optional[tuple] = None
    reason: Optional[str] = None

    @property
    def is_yes(self) -> bool:
        return self.status == "yes"

    @property
    def is_no(self) -> bool:
        return self.status == "no"


YES = Trivalent("yes")


class FinDimAlgebra:
    """Unital associative algebra from a structure-constant tensor."""

    __slots__ = ("field", "dim", "labels", "unit", "tensor")

    def __init__(self, field: Field, labels: Sequence[str], unit: Sequence,
                 tensor: Sequence[Sequence[Sequence]]):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.unit = tuple(field.reduce(x) for x in unit)
        if len(self.unit) != self.dim:
            raise AlgebraError("unit vector has wrong length")
        if len(tensor) != self.dim or any(len(row) != self.dim for row in tensor):
            raise AlgebraError("structure tensor has wrong shape")
        self.tensor = tuple(
            tuple(tuple(field.reduce(x) for x in cell) for cell in row)
            for row in tensor)
        for row in self.tensor:
            for cell in row:
                if len(cell) != self.dim:
                    raise AlgebraError("structure tensor cell has wrong length")

    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    def basis_vector(self, i: int) -> tuple:
        return unit_vector(self.field, self.dim, i)

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        """Bilinear extension of the structure tensor."""
        field = self.field
        out = [field.zero] * self.dim
        for p, up in enumerate(u):
            if up == 0:
                continue
            row = self.tensor[p]
            for q, vq in enumerate(v):
                if vq == 0:
                    continue
                c = up * vq
                cell = row[q]
                for t, w in enumerate(cell):
                    if w != 0:
                        out[t] += c * w
        red = field.reduce
        return tuple(red(x) for x in out)

    def commutator(self, u: Sequence, v: Sequence) -> tuple:
        red = self.field.reduce
        uv = self.mul(u, v)
        vu = self.mul(v, u)
        return tuple(red(a - b) for a, b in zip(uv, vu))

    def left_mul_matrix(self, u: Sequence) -> Matrix:
        return Matrix.from_columns(
            self.field, [self.mul(u, self.basis_vector(j)) for j in range(self.dim)])

    def right_mul_matrix(self, u: Sequence) -> Matrix:
        return Matrix.from_columns(
            self.field, [self.mul(self.basis_vector(j), u) for j in range(self.dim)])

    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(self.field.reduce(x) for x in coords))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def __eq__(self, other):
        return (isinstance(other, FinDimAlgebra) and self.field == other.field
                and self.labels == other.labels and self.unit == other.unit
                and self.tensor == other.tensor)

    def __hash__(self):
        return hash((self.field, self.labels, self.unit, self.tensor))

    def __repr__(self):
        return f"FinDimAlgebra(dim {self.dim} over {self.field!r})"


@dataclass(frozen=True)
class AlgebraElement:
    algebra: FinDimAlgebra
    coords: tuple

    def _check(self, other: "AlgebraElement"):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        red = self.algebra.field.reduce
        return AlgebraElement(self.algebra, tuple(
            red(a + b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        red = self.algebra.field.reduce
        return AlgebraElement(self.algebra, tuple(
            red(a - b) for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, self.algebra.mul(self.coords, other.coords))

    def is_zero(self) -> bool:
        return is_zero_vector(self.coords)


def multiply(alg: FinDimAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.algebra != alg or y.algebra != alg:
        raise AlgebraError("element does not belong to this algebra")
    return x * y


def commutator(alg: FinDimAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.algebra != alg or y.algebra != alg:
        raise AlgebraError("element does not belong to this algebra")
    return alg.element(alg.commutator(x.coords, y.coords))


def validate(alg: FinDimAlgebra) -> list[str]:
    """Every violated associativity/unit constraint, with indices; empty iff valid."""
    report = []
    for i in range(alg.dim):
        e = alg.basis_vector(i)
        if alg.mul(alg.unit, e) != e:
            report.append(f"unit: 1*e_{i} != e_{i}")
        if alg.mul(e, alg.unit) != e:
            report.append(f"unit: e_{i}*1 != e_{i}")
    for i in range(alg.dim):
        for j in range(alg.dim):
            ij = alg.tensor[i][j]
            for k in range(alg.dim):
                lhs = alg.mul(ij, alg.basis_vector(k))
                rhs = alg.mul(alg.basis_vector(i), alg.tensor[j][k])
                if lhs != rhs:
                    report.append(f"associativity: (e_{i}e_{j})e_{k} != e_{i}(e_{j}e_{k})")
    return report


def center(alg: FinDimAlgebra) -> Subspace:
    """Kernel of the stacked commutation maps z -> [z, e_i]."""
    mats = []
    for i in range(alg.dim):
        e = alg.basis_vector(i)
        ad = alg.right_mul_matrix(e).sub(alg.left_mul_matrix(e))
        # ad maps z to z*e - e*z = [z, e]
        mats.append(ad)
    return kernel(stack(mats))


def has_nonzero_central_ideal(alg: FinDimAlgebra) -> bool:
    """True iff S = { z in Z(alg) : alg*z contained in Z(alg) } is nonzero.

    For a unital algebra the two-sided ideal generated by a central z is
    alg*z, so a nonzero central ideal exists iff S does.
    """
    z = center(alg)
    cz = z.constraint_matrix()
    constraints = [cz]
    for i in range(alg.dim):
        constraints.append(cz.matmul(alg.left_mul_matrix(alg.basis_vector(i))))
    return kernel(stack(constraints)).dim > 0


def is_idempotent(alg: FinDimAlgebra, e: Sequence) -> bool:
    e = tuple(alg.field.reduce(x) for x in e)
    return alg.mul(e, e) == e


def is_nontrivial_idempotent(alg: FinDimAlgebra, e: Sequence) -> bool:
    e = tuple(alg.field.reduce(x) for x in e)
    return is_idempotent(alg, e) and not is_zero_vector(e) and e != alg.unit


def _all_vectors(field, dim):
    for coords in itertools.product(range(field.char), repeat=dim):
        yield tuple(field.reduce(c) for c in coords)


def is_domain(alg: FinDimAlgebra, search_limit: int = 100_000) -> Trivalent:
    """Decide whether alg has no zero divisors.

    "no" always carries a nonzero witness pair (x, y) with x*y = 0.  "yes"
    is returned only on sound grounds: dimension 1 over a field, or an
    exhaustive scan over a small enough prime field.  Everything else is
    "unknown" (soundness over completeness).
    """
    if alg.dim == 1:
        return YES
    for i in range(alg.dim):
        for j in range(alg.dim):
            if is_zero_vector(alg.tensor[i][j]):
                return Trivalent("no", (alg.basis_vector(i), alg.basis_vector(j)))
    if alg.field.char > 0 and alg.field.char ** alg.dim <= search_limit:
        for u in _all_vectors(alg.field, alg.dim):
            if is_zero_vector(u):
                continue
            ker = kernel(alg.left_mul_matrix(u))
            if ker.dim > 0:
                return Trivalent("no", (u, ker.basis[0]))
        return YES
    return Trivalent("unknown", reason="no sound criterion applies")


# ---------------------------------------------------------------------------
# named constructors used by fixtures, generators and tests
# ---------------------------------------------------------------------------

def matrix_algebra(field: Field, n: int) -> FinDimAlgebra:
    """M_n(F) on the matrix-unit basis e_{rc}, ordered row-major."""
    labels = [f"e{r}{c}" for r in range(n) for c in range(n)]
    dim = n * n
    def idx(r, c):
        return r * n + c
    unit = [field.zero] * dim
    for r in range(n):
        unit[idx(r, r)] = field.one
    tensor = [[None] * dim for _ in range(dim)]
    for r1 in range(n):
        for c1 in range(n):
            for r2 in range(n):
                for c2 in range(n):
                    cell = [field.zero] * dim
                    if c1 == r2:
                        cell[idx(r1, c2)] = field.one
                    tensor[idx(r1, c1)][idx(r2, c2)] = cell
    return FinDimAlgebra(field, labels, unit, tensor)


def upper_triangular_algebra(field: Field, n: int) -> FinDimAlgebra:
    """Upper-triangular n x n matrices on the basis e_{rc}, r <= c."""
    positions = [(r, c) for r in range(n) for c in range(r, n)]
    index = {pos: i for i, pos in enumerate(positions)}
    labels = [f"e{r}{c}" for r, c in positions]
    dim = len(positions)
    unit = [field.zero] * dim
    for r in range(n):
        unit[index[(r, r)]] = field.one
    tensor = [[None] * dim for _ in range(dim)]
    for (r1, c1), i in index.items():
        for (r2, c2), j in index.items():
            cell = [field.zero] * dim
            if c1 == r2:
                cell[index[(r1, c2)]] = field.one
            tensor[i][j] = cell
    return FinDimAlgebra(field, labels, unit, tensor)


def dual_numbers(field: Field) -> FinDimAlgebra:
    """F[x]/(x^2) on the basis {1, x}."""
    z, o = field.zero, field.one
    return FinDimAlgebra(field, ["1", "x"], (o, z),
                         [[(o, z), (z, o)], [(z, o), (z, z)]])

def product_field(field: Field, k: int) -> FinDimAlgebra:
    """F x ... x F (k factors) on orthogonal idempotents."""
    labels = [f"u{i}" for i in range(k)]
    unit = [field.one] * k
    tensor = [[[field.one if (i == j == t) else field.zero for t in range(k)]
               for j in range(k)] for i in range(k)]
    return FinDimAlgebra(field, labels, unit, tensor)


def scalar_field_algebra(field: Field) -> FinDimAlgebra:
    return product_field(field, 1)
