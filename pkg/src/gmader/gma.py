"""Morita contexts, bimodules, and the generalized matrix algebra they induce.

A context (A, B, M, N, Phi, Psi) yields the 2x2 block algebra G on the basis
basis(A) + basis(M) + basis(N) + basis(B), with Phi and Psi filling the MN
and NM products.  This module also computes the center of G with its a+b
block decomposition, the faithfulness taxonomy, the central isomorphism
between the two center projections, and the named example contexts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .linalg import (
    Field, Matrix, Subspace, is_zero_vector, kernel, span, unit_vector,
    zero_vector,
)
from .algebra import (
    AlgebraError, FinDimAlgebra, Trivalent, YES, center, dual_numbers,
    is_nontrivial_idempotent, matrix_algebra,
)


class GmaError(ValueError):
    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = violations or []


class NotWeaklyFaithfulError(GmaError):
    pass


class Bimodule:
    """A two-sided module given by left and right action tensors.

    left[i][j] = coordinates of (left-algebra basis i) . (module basis j);
    right[j][i] = coordinates of (module basis j) . (right-algebra basis i).
    """

    __slots__ = ("field", "dim", "labels", "left", "right")

    def __init__(self, field: Field, labels: Sequence[str], left, right):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.left = tuple(
            tuple(tuple(field.reduce(x) for x in cell) for cell in row)
            for row in left)
        self.right = tuple(
            tuple(tuple(field.reduce(x) for x in cell) for cell in row)
            for row in right)

    def left_act(self, avec: Sequence, mvec: Sequence) -> tuple:
        field = self.field
        out = [field.zero] * self.dim
        for i, ai in enumerate(avec):
            if ai == 0:
                continue
            row = self.left[i]
            for j, mj in enumerate(mvec):
                if mj == 0:
                    continue
                c = ai * mj
                for t, w in enumerate(row[j]):
                    if w != 0:
                        out[t] += c * w
        red = field.reduce
        return tuple(red(x) for x in out)

    def right_act(self, mvec: Sequence, bvec: Sequence) -> tuple:
        field = self.field
        out = [field.zero] * self.dim
        for j, mj in enumerate(mvec):
            if mj == 0:
                continue
            row = self.right[j]
            for i, bi in enumerate(bvec):
                if bi == 0:
                    continue
                c = mj * bi
                for t, w in enumerate(row[i]):
                    if w != 0:
                        out[t] += c * w
        red = field.reduce
        return tuple(red(x) for x in out)

    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    def basis_vector(self, j: int) -> tuple:
        return unit_vector(self.field, self.dim, j)

    def validate(self, left_alg: FinDimAlgebra, right_alg: FinDimAlgebra) -> list[str]:
        """Module-axiom violations as exact tensor identities on basis triples."""
        report = []
        if len(self.left) != left_alg.dim or any(len(r) != self.dim for r in self.left):
            return ["left action tensor has wrong shape"]
        if len(self.right) != self.dim or any(len(r) != right_alg.dim for r in self.right):
            return ["right action tensor has wrong shape"]
        for j in range(self.dim):
            m = self.basis_vector(j)
            if self.left_act(left_alg.unit, m) != m:
                report.append(f"1.m_{j} != m_{j}")
            if self.right_act(m, right_alg.unit) != m:
                report.append(f"m_{j}.1 != m_{j}")
        for i in range(left_alg.dim):
            for i2 in range(left_alg.dim):
                aa = left_alg.tensor[i][i2]
                for j in range(self.dim):
                    m = self.basis_vector(j)
                    lhs = self.left_act(aa, m)
                    rhs = self.left_act(left_alg.basis_vector(i),
                                        self.left_act(left_alg.basis_vector(i2), m))
                    if lhs != rhs:
                        report.append(f"(a_{i}a_{i2})m_{j} != a_{i}(a_{i2}m_{j})")
        for j in range(self.dim):
            m = self.basis_vector(j)
            for i in range(right_alg.dim):
                for i2 in range(right_alg.dim):
                    bb = right_alg.tensor[i][i2]
                    lhs = self.right_act(m, bb)
                    rhs = self.right_act(self.right_act(m, right_alg.basis_vector(i)),
                                         right_alg.basis_vector(i2))
                    if lhs != rhs:
                        report.append(f"m_{j}(b_{i}b_{i2}) != (m_{j}b_{i})b_{i2}")
        for i in range(left_alg.dim):
            a = left_alg.basis_vector(i)
            for j in range(self.dim):
                m = self.basis_vector(j)
                for i2 in range(right_alg.dim):
                    b = right_alg.basis_vector(i2)
                    lhs = self.right_act(self.left_act(a, m), b)
                    rhs = self.left_act(a, self.right_act(m, b))
                    if lhs != rhs:
                        report.append(f"(a_{i}m_{j})b_{i2} != a_{i}(m_{j}b_{i2})")
        return report


def zero_bimodule(field: Field, left_dim: int = 0) -> Bimodule:
    return Bimodule(field, [], [[] for _ in range(left_dim)], [])


class MoritaContext:
    """(A, B, M, N, Phi, Psi) with M an (A,B)-bimodule and N a (B,A)-bimodule.

    phi[i][j] = A-coordinates of Phi(m_i, n_j); psi[j][i] = B-coordinates of
    Psi(n_j, m_i).
    """

    __slots__ = ("field", "A", "B", "M", "N", "phi", "psi")

    def __init__(self, A: FinDimAlgebra, B: FinDimAlgebra,
                 M: Bimodule, N: Bimodule, phi, psi):
        self.field = A.field
        self.A = A
        self.B = B
        self.M = M
        self.N = N
        red = self.field.reduce
        self.phi = tuple(tuple(tuple(red(x) for x in cell) for cell in row)
                         for row in phi)
        self.psi = tuple(tuple(tuple(red(x) for x in cell) for cell in row)
                         for row in psi)

    def pair_mn(self, mvec: Sequence, nvec: Sequence) -> tuple:
        """Phi(m, n) in A."""
        field = self.field
        out = [field.zero] * self.A.dim
        for i, mi in enumerate(mvec):
            if mi == 0:
                continue
            row = self.phi[i]
            for j, nj in enumerate(nvec):
                if nj == 0:
                    continue
                c = mi * nj
                for t, w in enumerate(row[j]):
                    if w != 0:
                        out[t] += c * w
        red = field.reduce
        return tuple(red(x) for x in out)

    def pair_nm(self, nvec: Sequence, mvec: Sequence) -> tuple:
        """Psi(n, m) in B."""
        field = self.field
        out = [field.zero] * self.B.dim
        for j, nj in enumerate(nvec):
            if nj == 0:
                continue
            row = self.psi[j]
            for i, mi in enumerate(mvec):
                if mi == 0:
                    continue
                c = nj * mi
                for t, w in enumerate(row[i]):
                    if w != 0:
                        out[t] += c * w
        red = field.reduce
        return tuple(red(x) for x in out)

    def validate(self) -> list[str]:
        report = []
        if self.field.char == 2:
            report.append("coefficient field has characteristic 2")
        if self.B.field != self.field:
            report.append("A and B live over different fields")
        if self.M.dim == 0 and self.N.dim == 0:
            report.append("at least one of the two modules must be nonzero")
        report += [f"A: {v}" for v in _validate_algebra_cached(self.A)]
        report += [f"B: {v}" for v in _validate_algebra_cached(self.B)]
        report += [f"M: {v}" for v in self.M.validate(self.A, self.B)]
        report += [f"N: {v}" for v in self.N.validate(self.B, self.A)]
        if len(self.phi) != self.M.dim or any(len(r) != self.N.dim for r in self.phi):
            report.append("Phi tensor has wrong shape")
            return report
        if len(self.psi) != self.N.dim or any(len(r) != self.M.dim for r in self.psi):
            report.append("Psi tensor has wrong shape")
            return report
        A, B, M, N = self.A, self.B, self.M, self.N
        for i in range(M.dim):
            m = M.basis_vector(i)
            for j in range(N.dim):
                n = N.basis_vector(j)
                for t in range(A.dim):
                    a = A.basis_vector(t)
                    if self.pair_mn(M.left_act(a, m), n) != A.mul(a, self.pair_mn(m, n)):
                        report.append(f"Phi(a_{t}m_{i}, n_{j}) != a_{t}Phi(m_{i}, n_{j})")
                    if self.pair_mn(m, N.right_act(n, a)) != A.mul(self.pair_mn(m, n), a):
                        report.append(f"Phi(m_{i}, n_{j}a_{t}) != Phi(m_{i}, n_{j})a_{t}")
                for t in range(B.dim):
                    b = B.basis_vector(t)
                    if self.pair_mn(M.right_act(m, b), n) != self.pair_mn(m, N.left_act(b, n)):
                        report.append(f"Phi(m_{i}b_{t}, n_{j}) != Phi(m_{i}, b_{t}n_{j})")
                    if self.pair_nm(N.left_act(b, n), m) != B.mul(b, self.pair_nm(n, m)):
                        report.append(f"Psi(b_{t}n_{j}, m_{i}) != b_{t}Psi(n_{j}, m_{i})")
                    if self.pair_nm(n, M.right_act(m, b)) != B.mul(self.pair_nm(n, m), b):
                        report.append(f"Psi(n_{j}, m_{i}b_{t}) != Psi(n_{j}, m_{i})b_{t}")
                for t in range(A.dim):
                    a = A.basis_vector(t)
                    if self.pair_nm(N.right_act(n, a), m) != self.pair_nm(n, M.left_act(a, m)):
                        report.append(f"Psi(n_{j}a_{t}, m_{i}) != Psi(n_{j}, a_{t}m_{i})")
        for i in range(M.dim):
            m = M.basis_vector(i)
            for j in range(N.dim):
                n = N.basis_vector(j)
                for i2 in range(M.dim):
                    m2 = M.basis_vector(i2)
                    lhs = M.left_act(self.pair_mn(m, n), m2)
                    rhs = M.right_act(m, self.pair_nm(n, m2))
                    if lhs != rhs:
                        report.append(f"Phi(m_{i},n_{j})m_{i2} != m_{i}Psi(n_{j},m_{i2})")
                for j2 in range(N.dim):
                    n2 = N.basis_vector(j2)
                    lhs = N.right_act(n, self.pair_mn(m, n2))
                    rhs = N.left_act(self.pair_nm(n, m), n2)
                    if lhs != rhs:
                        report.append(f"Psi(n_{j},m_{i})n_{j2} != n_{j}Phi(m_{i},n_{j2})")
        return report


_ALGEBRA_VALIDATION_CACHE: dict = {}


def _validate_algebra_cached(alg: FinDimAlgebra) -> list[str]:
    # keyed by identity with the algebra pinned, so ids are never recycled
    from .algebra import validate
    hit = _ALGEBRA_VALIDATION_CACHE.get(id(alg))
    if hit is not None and hit[0] is alg:
        return hit[1]
    report = validate(alg)
    _ALGEBRA_VALIDATION_CACHE[id(alg)] = (alg, report)
    return report


class Gma:
    """The generalized matrix algebra of a Morita context, with block metadata."""

    __slots__ = ("ctx", "algebra", "dim", "a_range", "m_range", "n_range", "b_range")

    def __init__(self, ctx: MoritaContext, algebra: FinDimAlgebra):
        self.ctx = ctx
        self.algebra = algebra
        self.dim = algebra.dim
        da, dm, dn = ctx.A.dim, ctx.M.dim, ctx.N.dim
        self.a_range = range(0, da)
        self.m_range = range(da, da + dm)
        self.n_range = range(da + dm, da + dm + dn)
        self.b_range = range(da + dm + dn, self.dim)

    @property
    def field(self) -> Field:
        return self.ctx.field

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        return self.algebra.mul(u, v)

    def commutator(self, u: Sequence, v: Sequence) -> tuple:
        return self.algebra.commutator(u, v)

    def unit(self) -> tuple:
        return self.algebra.unit

    def zero(self) -> tuple:
        return self.algebra.zero()

    def basis_vector(self, i: int) -> tuple:
        return self.algebra.basis_vector(i)

    # block projections and embeddings -------------------------------------
    def part_a(self, g: Sequence) -> tuple:
        return tuple(g[i] for i in self.a_range)

    def part_m(self, g: Sequence) -> tuple:
        return tuple(g[i] for i in self.m_range)

    def part_n(self, g: Sequence) -> tuple:
        return tuple(g[i] for i in self.n_range)

    def part_b(self, g: Sequence) -> tuple:
        return tuple(g[i] for i in self.b_range)

    def assemble(self, a: Sequence, m: Sequence, n: Sequence, b: Sequence) -> tuple:
        return tuple(a) + tuple(m) + tuple(n) + tuple(b)

    def embed_a(self, a: Sequence) -> tuple:
        return self.assemble(a, self.ctx.M.zero(), self.ctx.N.zero(),
                             zero_vector(self.field, self.ctx.B.dim))

    def embed_m(self, m: Sequence) -> tuple:
        return self.assemble(zero_vector(self.field, self.ctx.A.dim), m,
                             self.ctx.N.zero(), zero_vector(self.field, self.ctx.B.dim))

    def embed_n(self, n: Sequence) -> tuple:
        return self.assemble(zero_vector(self.field, self.ctx.A.dim),
                             self.ctx.M.zero(), n, zero_vector(self.field, self.ctx.B.dim))

    def embed_b(self, b: Sequence) -> tuple:
        return self.assemble(zero_vector(self.field, self.ctx.A.dim),
                             self.ctx.M.zero(), self.ctx.N.zero(), b)

    def __repr__(self):
        c = self.ctx
        return (f"Gma(dim {self.dim}: A={c.A.dim}, M={c.M.dim}, "
                f"N={c.N.dim}, B={c.B.dim})")


def project_a(gma: Gma, g: Sequence) -> tuple:
    return gma.part_a(g)


def project_b(gma: Gma, g: Sequence) -> tuple:
    return gma.part_b(g)


def build_gma(ctx: MoritaContext, check: bool = True) -> Gma:
    """Derive the block algebra; raises GmaError when the context is invalid."""
    if check:
        violations = ctx.validate()
        if violations:
            raise GmaError(f"invalid Morita context ({len(violations)} violations)",
                           violations)
    field = ctx.field
    A, B, M, N = ctx.A, ctx.B, ctx.M, ctx.N
    da, dm, dn, db = A.dim, M.dim, N.dim, B.dim
    dim = da + dm + dn + db
    labels = ([f"a:{s}" for s in A.labels] + [f"m:{s}" for s in M.labels]
              + [f"n:{s}" for s in N.labels] + [f"b:{s}" for s in B.labels])
    zA, zM, zN, zB = (zero_vector(field, da), zero_vector(field, dm),
                      zero_vector(field, dn), zero_vector(field, db))

    def widen(a=zA, m=zM, n=zN, b=zB):
        return tuple(a) + tuple(m) + tuple(n) + tuple(b)

    basis_elements = []
    for i in range(da):
        basis_elements.append(("a", unit_vector(field, da, i)))
    for i in range(dm):
        basis_elements.append(("m", unit_vector(field, dm, i)))
    for i in range(dn):
        basis_elements.append(("n", unit_vector(field, dn, i)))
    for i in range(db):
        basis_elements.append(("b", unit_vector(field, db, i)))

    def product(kind1, v1, kind2, v2):
        if kind1 == "a":
            if kind2 == "a":
                return widen(a=A.mul(v1, v2))
            if kind2 == "m":
                return widen(m=M.left_act(v1, v2))
            return widen()  # a.n and a.b vanish
        if kind1 == "m":
            if kind2 == "n":
                return widen(a=ctx.pair_mn(v1, v2))
            if kind2 == "b":
                return widen(m=M.right_act(v1, v2))
            return widen()
        if kind1 == "n":
            if kind2 == "a":
                return widen(n=N.right_act(v1, v2))
            if kind2 == "m":
                return widen(b=ctx.pair_nm(v1, v2))
            return widen()
        # kind1 == "b"
        if kind2 == "n":
            return widen(n=N.left_act(v1, v2))
        if kind2 == "b":
            return widen(b=B.mul(v1, v2))
        return widen()

    tensor = [[product(k1, v1, k2, v2) for (k2, v2) in basis_elements]
              for (k1, v1) in basis_elements]
    unit = widen(a=A.unit, b=B.unit)
    algebra = FinDimAlgebra(field, labels, unit, tensor)
    return Gma(ctx, algebra)


# ---------------------------------------------------------------------------
# center, faithfulness, and the central isomorphism
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CenterReport:
    subspace: Subspace
    pairs: tuple  # (a_part, b_part) per basis vector


_CENTER_CACHE: dict = {}


def center_gma(gma: Gma) -> CenterReport:
    """Center of the block algebra, cross-checked against the a+b description."""
    hit = _CENTER_CACHE.get(id(gma))
    if hit is not None and hit[0] is gma:
        return hit[1]
    report = _center_gma_uncached(gma)
    _CENTER_CACHE[id(gma)] = (gma, report)
    return report


def _center_gma_uncached(gma: Gma) -> CenterReport:
    sub = center(gma.algebra)
    ctx = gma.ctx
    pairs = []
    for vec in sub.basis:
        if not is_zero_vector(gma.part_m(vec)) or not is_zero_vector(gma.part_n(vec)):
            raise GmaError("center vector with nonzero off-diagonal block")
        a, b = gma.part_a(vec), gma.part_b(vec)
        for j in range(ctx.M.dim):
            m = ctx.M.basis_vector(j)
            if ctx.M.left_act(a, m) != ctx.M.right_act(m, b):
                raise GmaError("center cross-check failed: am != mb")
        for j in range(ctx.N.dim):
            n = ctx.N.basis_vector(j)
            if ctx.N.right_act(n, a) != ctx.N.left_act(b, n):
                raise GmaError("center cross-check failed: na != bn")
        pairs.append((a, b))
    return CenterReport(sub, tuple(pairs))


def _action_kernel(field, columns, ambient) -> Subspace:
    if not columns or not columns[0]:
        # no constraints at all
        return span(field, ambient, [unit_vector(field, ambient, i) for i in range(ambient)])
    return kernel(Matrix.from_columns(field, columns))


def _annihilator_a_on_m(gma: Gma) -> Subspace:
    """{a : aM = 0}."""
    ctx = gma.ctx
    cols = []
    for i in range(ctx.A.dim):
        a = ctx.A.basis_vector(i)
        col = []
        for j in range(ctx.M.dim):
            col.extend(ctx.M.left_act(a, ctx.M.basis_vector(j)))
        cols.append(tuple(col))
    return _action_kernel(gma.field, cols, ctx.A.dim)


def _annihilator_b_on_m(gma: Gma) -> Subspace:
    """{b : Mb = 0}."""
    ctx = gma.ctx
    cols = []
    for i in range(ctx.B.dim):
        b = ctx.B.basis_vector(i)
        col = []
        for j in range(ctx.M.dim):
            col.extend(ctx.M.right_act(ctx.M.basis_vector(j), b))
        cols.append(tuple(col))
    return _action_kernel(gma.field, cols, ctx.B.dim)


def _annihilator_b_on_n(gma: Gma) -> Subspace:
    """{b : bN = 0}."""
    ctx = gma.ctx
    cols = []
    for i in range(ctx.B.dim):
        b = ctx.B.basis_vector(i)
        col = []
        for j in range(ctx.N.dim):
            col.extend(ctx.N.left_act(b, ctx.N.basis_vector(j)))
        cols.append(tuple(col))
    return _action_kernel(gma.field, cols, ctx.B.dim)


def _annihilator_a_on_n(gma: Gma) -> Subspace:
    """{a : Na = 0}."""
    ctx = gma.ctx
    cols = []
    for i in range(ctx.A.dim):
        a = ctx.A.basis_vector(i)
        col = []
        for j in range(ctx.N.dim):
            col.extend(ctx.N.right_act(ctx.N.basis_vector(j), a))
        cols.append(tuple(col))
    return _action_kernel(gma.field, cols, ctx.A.dim)


def _no_annihilating_pairs(field, dim_x, dim_m, act, limit=100_000) -> Trivalent:
    """Decide: x.m = 0 with x != 0 forces m = 0 (3-valued; witness on "no").

    `act(xvec, mvec)` evaluates the action.  Basis pairs give quick
    witnesses; a one-dimensional module reduces to plain faithfulness; over
    a small prime field the module side is enumerated exhaustively.
    """
    if dim_m == 0:
        return YES
    for i in range(dim_x):
        x = unit_vector(field, dim_x, i)
        for j in range(dim_m):
            m = unit_vector(field, dim_m, j)
            if is_zero_vector(act(x, m)):
                return Trivalent("no", (x, m))
    cols_for = lambda m: [act(unit_vector(field, dim_x, i), m) for i in range(dim_x)]
    if dim_m == 1:
        ker = kernel(Matrix.from_columns(field, cols_for(unit_vector(field, dim_m, 0))))
        if ker.dim > 0:
            return Trivalent("no", (ker.basis[0], unit_vector(field, dim_m, 0)))
        return YES
    if field.char > 0 and field.char ** dim_m <= limit:
        for coords in itertools.product(range(field.char), repeat=dim_m):
            m = tuple(field.reduce(c) for c in coords)
            if is_zero_vector(m):
                continue
            ker = kernel(Matrix.from_columns(field, cols_for(m)))
            if ker.dim > 0:
                return Trivalent("no", (ker.basis[0], m))
        return YES
    return Trivalent("unknown", reason="no sound criterion applies")


def _tri_and(flag: bool, flag_witness, tri: Trivalent) -> Trivalent:
    if not flag:
        return Trivalent("no", flag_witness)
    return tri


def _tri_or(x: Trivalent, y: Trivalent) -> Trivalent:
    if x.is_yes or y.is_yes:
        return YES
    if x.is_no and y.is_no:
        return Trivalent("no", x.witness)
    return Trivalent("unknown", reason="neither clause decided yes")


@dataclass(frozen=True)
class FaithfulnessReport:
    m_left: bool
    m_right: bool
    n_left: bool
    n_right: bool
    m_faithful: bool
    n_faithful: bool
    strong_m_clause_a: Trivalent
    strong_m_clause_b: Trivalent
    strong_n_clause_a: Trivalent
    strong_n_clause_b: Trivalent
    strongly_faithful_m: Trivalent
    strongly_faithful_n: Trivalent
    weakly_faithful: bool


def faithfulness(gma: Gma) -> FaithfulnessReport:
    """The full annihilation taxonomy, decided exactly where linear."""
    ctx = gma.ctx
    field = gma.field
    ann_am = _annihilator_a_on_m(gma)   # {a : aM = 0}
    ann_bm = _annihilator_b_on_m(gma)   # {b : Mb = 0}
    ann_bn = _annihilator_b_on_n(gma)   # {b : bN = 0}
    ann_an = _annihilator_a_on_n(gma)   # {a : Na = 0}
    m_left = ann_am.dim == 0
    m_right = ann_bm.dim == 0
    n_left = ann_bn.dim == 0
    n_right = ann_an.dim == 0
    if ctx.M.dim == 0:
        m_left = m_right = False
    if ctx.N.dim == 0:
        n_left = n_right = False
    weak_a = intersect_dims_zero(ann_am, ann_an)
    weak_b = intersect_dims_zero(ann_bm, ann_bn)

    no_pairs_am = _no_annihilating_pairs(
        field, ctx.A.dim, ctx.M.dim, lambda a, m: ctx.M.left_act(a, m))
    no_pairs_mb = _no_annihilating_pairs(
        field, ctx.B.dim, ctx.M.dim, lambda b, m: ctx.M.right_act(m, b))
    no_pairs_bn = _no_annihilating_pairs(
        field, ctx.B.dim, ctx.N.dim, lambda b, n: ctx.N.left_act(b, n))
    no_pairs_na = _no_annihilating_pairs(
        field, ctx.A.dim, ctx.N.dim, lambda a, n: ctx.N.right_act(n, a))

    m_wit_right = (ann_bm.basis[0],) if ann_bm.dim else None
    m_wit_left = (ann_am.basis[0],) if ann_am.dim else None
    strong_m_a = _tri_and(m_right, m_wit_right, no_pairs_am)
    strong_m_b = _tri_and(m_left, m_wit_left, no_pairs_mb)
    n_wit_right = (ann_an.basis[0],) if ann_an.dim else None
    n_wit_left = (ann_bn.basis[0],) if ann_bn.dim else None
    strong_n_a = _tri_and(n_right, n_wit_right, no_pairs_bn)
    strong_n_b = _tri_and(n_left, n_wit_left, no_pairs_na)
    if ctx.M.dim == 0:
        strong_m_a = strong_m_b = Trivalent("no", reason="M = 0")
    if ctx.N.dim == 0:
        strong_n_a = strong_n_b = Trivalent("no", reason="N = 0")

    return FaithfulnessReport(
        m_left=m_left, m_right=m_right, n_left=n_left, n_right=n_right,
        m_faithful=m_left and m_right, n_faithful=n_left and n_right,
        strong_m_clause_a=strong_m_a, strong_m_clause_b=strong_m_b,
        strong_n_clause_a=strong_n_a, strong_n_clause_b=strong_n_b,
        strongly_faithful_m=_tri_or(strong_m_a, strong_m_b),
        strongly_faithful_n=_tri_or(strong_n_a, strong_n_b),
        weakly_faithful=weak_a and weak_b,
    )


def intersect_dims_zero(u: Subspace, v: Subspace) -> bool:
    from .linalg import intersect
    return intersect(u, v).dim == 0


class CenterIso:
    """The isomorphism between the two center projections of a weakly
    faithful generalized matrix algebra, realised by projecting a basis of
    the center."""

    __slots__ = ("gma", "domain", "codomain", "_forward", "_backward")

    def __init__(self, gma: Gma, pairs):
        field = gma.field
        da, db = gma.ctx.A.dim, gma.ctx.B.dim
        self.gma = gma
        fwd_rows = [list(a) + list(b) for a, b in pairs]
        from .linalg import _rref
        rows, pivots = _rref(field, fwd_rows)
        self._forward = []
        for row, p in zip(rows, pivots):
            if p >= da:
                raise GmaError("center projection is degenerate on the A side")
            self._forward.append((tuple(row[:da]), tuple(row[da:]), p))
        bwd_rows = [list(b) + list(a) for a, b in pairs]
        rows, pivots = _rref(field, bwd_rows)
        self._backward = []
        for row, p in zip(rows, pivots):
            if p >= db:
                raise GmaError("center projection is degenerate on the B side")
            self._backward.append((tuple(row[:db]), tuple(row[db:]), p))
        self.domain = span(field, da, [a for a, _, _ in self._forward])
        self.codomain = span(field, db, [b for b, _, _ in self._backward])

    def apply(self, avec: Sequence) -> tuple:
        """phi(a); raises when a is outside pi_A(Z(G))."""
        return self._chase(avec, self._forward, self.gma.ctx.B.dim, "pi_A(Z(G))")

    def inverse(self, bvec: Sequence) -> tuple:
        return self._chase(bvec, self._backward, self.gma.ctx.A.dim, "pi_B(Z(G))")

    def _chase(self, vec, table, out_dim, name):
        field = self.gma.field
        red = field.reduce
        residue = list(vec)
        out = [field.zero] * out_dim
        for src, img, p in table:
            c = residue[p]
            if c != 0:
                residue = [red(x - c * s) for x, s in zip(residue, src)]
                out = [red(x + c * s) for x, s in zip(out, img)]
        if not is_zero_vector(residue):
            raise GmaError(f"element outside {name}")
        return tuple(out)


def compute_phi(gma: Gma) -> CenterIso:
    """Central isomorphism pi_A(Z(G)) -> pi_B(Z(G)); needs weak faithfulness."""
    report = faithfulness(gma)
    if not report.weakly_faithful:
        raise NotWeaklyFaithfulError("gma is not weakly faithful")
    info = center_gma(gma)
    iso = CenterIso(gma, info.pairs)
    ctx = gma.ctx
    # defensive cross-checks: a + phi(a) is central and phi is multiplicative
    for avec in iso.domain.basis:
        bvec = iso.apply(avec)
        gv = gma.assemble(avec, ctx.M.zero(), ctx.N.zero(), bvec)
        if not info.subspace.contains(gv):
            raise GmaError("phi failed the centrality cross-check")
        if iso.inverse(bvec) != tuple(gma.field.reduce(x) for x in avec):
            raise GmaError("phi failed the invertibility cross-check")
    for avec in iso.domain.basis:
        for avec2 in iso.domain.basis:
            prod = ctx.A.mul(avec, avec2)
            if iso.apply(prod) != ctx.B.mul(iso.apply(avec), iso.apply(avec2)):
                raise GmaError("phi failed the multiplicativity cross-check")
    return iso


def is_trivial(gma: Gma) -> bool:
    """True iff both pairings vanish identically."""
    ctx = gma.ctx
    for row in ctx.phi:
        for cell in row:
            if not is_zero_vector(cell):
                return False
    for row in ctx.psi:
        for cell in row:
            if not is_zero_vector(cell):
                return False
    return True


# ---------------------------------------------------------------------------
# Peirce decomposition
# ---------------------------------------------------------------------------

def _corner_data(alg: FinDimAlgebra, left: Sequence, right: Sequence):
    """Basis (ambient vectors) of left*alg*right."""
    images = [alg.mul(left, alg.mul(alg.basis_vector(i), right))
              for i in range(alg.dim)]
    sub = span(alg.field, alg.dim, images)
    return list(sub.basis), sub


def peirce_decompose(alg: FinDimAlgebra, e: Sequence) -> MoritaContext:
    ctx, _ = peirce_decompose_with_embedding(alg, e)
    return ctx


def peirce_decompose_with_embedding(alg: FinDimAlgebra, e: Sequence):
    """Corner context (eAe, fAf, eAf, fAe, products) plus the block embedding.

    The embedding matrix maps concatenated corner coordinates to ambient
    coordinates; it is a linear isomorphism by the Peirce decomposition.
    """
    field = alg.field
    e = tuple(field.reduce(x) for x in e)
    if not is_nontrivial_idempotent(alg, e):
        raise AlgebraError("not a nontrivial idempotent")
    f = tuple(field.reduce(u - x) for u, x in zip(alg.unit, e))
    basis_a, _ = _corner_data(alg, e, e)
    basis_b, _ = _corner_data(alg, f, f)
    basis_m, _ = _corner_data(alg, e, f)
    basis_n, _ = _corner_data(alg, f, e)

    def coords_in(basis, vec, what):
        sub = span(field, alg.dim, basis)
        # basis rows are already reduced-echelon, so coordinates exist iff member
        c = sub.coordinates(vec)
        if c is None:
            raise AlgebraError(f"product left the {what} corner")
        return c

    def corner_algebra(basis, unit_vec, tag):
        dim = len(basis)
        labels = [f"{tag}{i}" for i in range(dim)]
        tensor = [[coords_in(basis, alg.mul(basis[i], basis[j]), tag)
                   for j in range(dim)] for i in range(dim)]
        return FinDimAlgebra(field, labels, coords_in(basis, unit_vec, tag), tensor)

    A = corner_algebra(basis_a, e, "ea")
    B = corner_algebra(basis_b, f, "fb")
    M = Bimodule(field, [f"em{i}" for i in range(len(basis_m))],
                 [[coords_in(basis_m, alg.mul(basis_a[i], basis_m[j]), "eAf")
                   for j in range(len(basis_m))] for i in range(len(basis_a))],
                 [[coords_in(basis_m, alg.mul(basis_m[j], basis_b[i]), "eAf")
                   for i in range(len(basis_b))] for j in range(len(basis_m))])
    N = Bimodule(field, [f"fn{i}" for i in range(len(basis_n))],
                 [[coords_in(basis_n, alg.mul(basis_b[i], basis_n[j]), "fAe")
                   for j in range(len(basis_n))] for i in range(len(basis_b))],
                 [[coords_in(basis_n, alg.mul(basis_n[j], basis_a[i]), "fAe")
                   for i in range(len(basis_a))] for j in range(len(basis_n))])
    phi = [[coords_in(basis_a, alg.mul(basis_m[i], basis_n[j]), "eAe")
            for j in range(len(basis_n))] for i in range(len(basis_m))]
    psi = [[coords_in(basis_b, alg.mul(basis_n[j], basis_m[i]), "fAf")
            for i in range(len(basis_m))] for j in range(len(basis_n))]
    ctx = MoritaContext(A, B, M, N, phi, psi)
    embedding = Matrix.from_columns(field, basis_a + basis_m + basis_n + basis_b)
    return ctx, embedding


# ---------------------------------------------------------------------------
# named fixtures
# ---------------------------------------------------------------------------

def triangular(A: FinDimAlgebra, M: Bimodule, B: FinDimAlgebra) -> Gma:
    """Tri(A, M, B): the context with N = 0."""
    field = A.field
    N = zero_bimodule(field, B.dim)
    phi = [[] for _ in range(M.dim)]
    psi = []
    return build_gma(MoritaContext(A, B, M, N, phi, psi))


def regular_bimodule(A: FinDimAlgebra) -> Bimodule:
    """A as an (A, A)-bimodule under multiplication."""
    left = [[A.tensor[i][j] for j in range(A.dim)] for i in range(A.dim)]
    right = [[A.tensor[j][i] for i in range(A.dim)] for j in range(A.dim)]
    return Bimodule(A.field, A.labels, left, right)


def full_matrix(field: Field, n: int) -> Gma:
    """Peirce context of M_n(F) at the corner idempotent e_00; needs n >= 2."""
    if n < 2:
        raise AlgebraError("full_matrix requires n >= 2")
    alg = matrix_algebra(field, n)
    e = [field.zero] * alg.dim
    e[0] = field.one  # e_00
    ctx = peirce_decompose(alg, tuple(e))
    return build_gma(ctx)


def benkovic(field: Field) -> Gma:
    """The ten-dimensional trivial-context example on base {1, m, m'}.

    A = span{1, m} and B = span{1, m'} sit inside the three-dimensional
    commutative algebra W = span{1, m, m'} with mm = m'm' = mm' = m'm = 0;
    M = N = W with actions by multiplication in W, and both pairings are
    zero, so MN = NM = 0.
    """
    if field.char == 2:
        raise AlgebraError("characteristic 2 is excluded")
    z, o = field.zero, field.one

    def wmul(i, j):
        # W basis: 0 -> 1, 1 -> m, 2 -> m'
        if i == 0:
            return unit_vector(field, 3, j)
        if j == 0:
            return unit_vector(field, 3, i)
        return (z, z, z)

    A = dual_numbers(field)                       # {1, m}
    B = FinDimAlgebra(field, ["1", "m'"], (o, z),
                      [[(o, z), (z, o)], [(z, o), (z, z)]])
    a_into_w = {0: 0, 1: 1}   # 1 -> 1, m -> m
    b_into_w = {0: 0, 1: 2}   # 1 -> 1, m' -> m'
    labels_w = ["1", "m", "m'"]

    def module(left_map, right_map):
        left = [[wmul(left_map[i], j) for j in range(3)] for i in range(2)]
        right = [[wmul(j, right_map[i]) for i in range(2)] for j in range(3)]
        return Bimodule(field, labels_w, left, right)

    M = module(a_into_w, b_into_w)
    N = module(b_into_w, a_into_w)
    phi = [[(z, z) for _ in range(3)] for _ in range(3)]
    psi = [[(z, z) for _ in range(3)] for _ in range(3)]
    return build_gma(MoritaContext(A, B, M, N, phi, psi))


def benkovic_improper_map(gma: Gma) -> Matrix:
    """The displayed improper Lie derivation on the benkovic fixture.

    (a, m; n, b) -> (u'm, -s''m - s'm'; -t''m - t'm', r'm') for
    a = r + r'm, b = u + u'm', m = s + s'm + s''m', n = t + t'm + t''m'.
    """
    field = gma.field
    dim = gma.dim
    o = field.one
    neg = field.reduce(-field.one)
    image = {
        gma.a_range[1]: (gma.b_range[1], o),    # a-part m  -> m' in B
        gma.m_range[1]: (gma.m_range[2], neg),  # m-part m  -> -m' in M
        gma.m_range[2]: (gma.m_range[1], neg),  # m-part m' -> -m in M
        gma.n_range[1]: (gma.n_range[2], neg),  # n-part m  -> -m' in N
        gma.n_range[2]: (gma.n_range[1], neg),  # n-part m' -> -m in N
        gma.b_range[1]: (gma.a_range[1], o),    # b-part m' -> m in A
    }
    cols = []
    for idx in range(dim):
        col = [field.zero] * dim
        if idx in image:
            target, coeff = image[idx]
            col[target] = coeff
        cols.append(tuple(col))
    return Matrix.from_columns(field, cols)
