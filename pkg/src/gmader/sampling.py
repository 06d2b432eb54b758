"""Seeded, deterministic generators for instances, sequences and ingredients.

Everything here drives tests and the CLI generation command.  All
randomness flows through an explicit random.Random, so a fixed seed
reproduces every generated object byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction
from .linalg import Field, Matrix, kernel, unit_vector, zero_vector
from .algebra import FinDimAlgebra, product_field, upper_triangular_algebra
from .gma import (
    Bimodule, Gma, MoritaContext, benkovic, benkovic_improper_map, build_gma,
    center_gma, full_matrix, peirce_decompose, triangular,
)
from .mapseq import (
    MapSequence, extract_entries, inner_derivation, ordinary_from_derivation,
    ordinary_sequence, seq_grade, seq_sum, verify_hd, verify_lhd,
)
from .structure import LhdIngredients, hd_families, synthesize_lhd


def rand_scalar(field: Field, rng: random.Random):
    if field.char == 0:
        return Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return rng.randrange(field.char)


def rand_vector(field: Field, n: int, rng: random.Random) -> tuple:
    return tuple(rand_scalar(field, rng) for _ in range(n))


def rand_matrix(field: Field, rows: int, cols: int, rng: random.Random) -> Matrix:
    return Matrix(field, [rand_vector(field, cols, rng) for _ in range(rows)],
                  cols=cols)


# ---------------------------------------------------------------------------
# instance catalog
# ---------------------------------------------------------------------------

def direct_sum_algebra(a1: FinDimAlgebra, a2: FinDimAlgebra) -> FinDimAlgebra:
    """Block-diagonal product algebra a1 x a2."""
    field = a1.field
    d1, d2 = a1.dim, a2.dim
    labels = [f"l:{s}" for s in a1.labels] + [f"r:{s}" for s in a2.labels]
    unit = tuple(a1.unit) + tuple(a2.unit)
    dim = d1 + d2
    z = field.zero
    tensor = []
    for i in range(dim):
        row = []
        for j in range(dim):
            cell = [z] * dim
            if i < d1 and j < d1:
                for t, v in enumerate(a1.tensor[i][j]):
                    cell[t] = v
            elif i >= d1 and j >= d1:
                for t, v in enumerate(a2.tensor[i - d1][j - d1]):
                    cell[d1 + t] = v
            row.append(tuple(cell))
        tensor.append(row)
    return FinDimAlgebra(field, labels, unit, tensor)


def incidence_bimodule(field: Field, left_dim: int, right_dim: int,
                       row_labels, col_labels) -> Bimodule:
    """Module over two split-diagonal algebras: basis vector j is supported
    on row row_labels[j] and column col_labels[j]."""
    dm = len(row_labels)
    left = [[unit_vector(field, dm, j) if row_labels[j] == i
             else zero_vector(field, dm)
             for j in range(dm)] for i in range(left_dim)]
    right = [[unit_vector(field, dm, j) if col_labels[j] == i
              else zero_vector(field, dm)
              for i in range(right_dim)] for j in range(dm)]
    return Bimodule(field, [f"m{j}" for j in range(dm)], left, right)


def incidence_triangular(field: Field, da: int, db: int,
                         row_labels, col_labels) -> Gma:
    a = product_field(field, da)
    b = product_field(field, db)
    m = incidence_bimodule(field, da, db, row_labels, col_labels)
    return triangular(a, m, b)


def trivial_double(field: Field, da: int, db: int, m_rows, m_cols,
                   n_rows, n_cols) -> Gma:
    """Trivial context (both pairings zero) with incidence modules both ways."""
    a = product_field(field, da)
    b = product_field(field, db)
    m = incidence_bimodule(field, da, db, m_rows, m_cols)
    n = incidence_bimodule(field, db, da, n_rows, n_cols)
    phi = [[zero_vector(field, da) for _ in range(n.dim)] for _ in range(m.dim)]
    psi = [[zero_vector(field, db) for _ in range(m.dim)] for _ in range(n.dim)]
    return build_gma(MoritaContext(a, b, m, n, phi, psi))


def peirce_gma(alg: FinDimAlgebra, e) -> Gma:
    return build_gma(peirce_decompose(alg, e))


_CATALOG_CACHE: dict = {}


def catalog_gmas(field: Field) -> list:
    """A deterministic pool of valid instances with dim(G) <= 12."""
    key = field.spec().get("kind"), field.char
    if key in _CATALOG_CACHE:
        return _CATALOG_CACHE[key]
    e_ut3 = [field.zero] * 6
    e_ut3[0] = field.one  # e_00 in the (00,01,02,11,12,22) basis
    pool = [
        full_matrix(field, 2),                                     # dim 4
        peirce_gma(upper_triangular_algebra(field, 2),
                   (field.one, field.zero, field.zero)),           # dim 3
        peirce_gma(upper_triangular_algebra(field, 3), tuple(e_ut3)),  # dim 6
        full_matrix(field, 3),                                     # dim 9
        trivial_double(field, 2, 2, (0, 1), (0, 1), (0, 1), (0, 1)),   # dim 8
        benkovic(field),                                           # dim 10
    ]
    _CATALOG_CACHE[key] = pool
    return pool


def faithful_catalog(field: Field) -> list:
    """Catalog members whose M is faithful on both sides."""
    from .gma import faithfulness
    return [g for g in catalog_gmas(field) if faithfulness(g).m_faithful]


def benkovic_dead_end(field: Field) -> Gma:
    """The trivial-context example extended by a dead one-dimensional
    summand of A, killing weak faithfulness while keeping the improper map."""
    base = benkovic(field)
    ctx = base.ctx
    a_ext = direct_sum_algebra(ctx.A, product_field(field, 1))
    dm = ctx.M.dim
    left = [list(row) for row in ctx.M.left] + [[zero_vector(field, dm)] * dm]
    m_ext = Bimodule(field, ctx.M.labels, left, ctx.M.right)
    right = [list(row) + [zero_vector(field, dm)] for row in ctx.N.right]
    n_ext = Bimodule(field, ctx.N.labels, ctx.N.left, right)
    phi = [[zero_vector(field, a_ext.dim) for _ in range(n_ext.dim)]
           for _ in range(m_ext.dim)]
    psi = [[zero_vector(field, ctx.B.dim) for _ in range(m_ext.dim)]
           for _ in range(n_ext.dim)]
    return build_gma(MoritaContext(a_ext, ctx.B, m_ext, n_ext, phi, psi))


def benkovic_dead_end_map(gma: Gma) -> Matrix:
    """The improper map transported to the dead-end extension (zero on the
    extra summand)."""
    field = gma.field
    o = field.one
    neg = field.reduce(-o)
    image = {
        gma.a_range[1]: (gma.b_range[1], o),
        gma.m_range[1]: (gma.m_range[2], neg),
        gma.m_range[2]: (gma.m_range[1], neg),
        gma.n_range[1]: (gma.n_range[2], neg),
        gma.n_range[2]: (gma.n_range[1], neg),
        gma.b_range[1]: (gma.a_range[1], o),
    }
    cols = []
    for idx in range(gma.dim):
        col = [field.zero] * gma.dim
        if idx in image:
            target, coeff = image[idx]
            col[target] = coeff
        cols.append(tuple(col))
    return Matrix.from_columns(field, cols)


def random_triangular(field: Field, rng: random.Random) -> Gma:
    da = rng.randint(1, 3)
    db = rng.randint(1, 3)
    dm = rng.randint(1, 3)
    rows = [rng.randrange(da) for _ in range(dm)]
    cols = [rng.randrange(db) for _ in range(dm)]
    return incidence_triangular(field, da, db, rows, cols)


# ---------------------------------------------------------------------------
# sequence generators
# ---------------------------------------------------------------------------

def random_mapseq(gma: Gma, order: int, rng: random.Random) -> MapSequence:
    """L_0 = id with arbitrary higher-order maps (no identities assumed)."""
    mats = [Matrix.identity(gma.field, gma.dim)]
    mats += [rand_matrix(gma.field, gma.dim, gma.dim, rng) for _ in range(order)]
    return MapSequence(gma, mats)


def random_inner_hd(gma: Gma, order: int, rng: random.Random) -> MapSequence:
    """Ordinary higher derivation of a random inner derivation."""
    x = rand_vector(gma.field, gma.dim, rng)
    return ordinary_from_derivation(gma, inner_derivation(gma, x), order)


def commutator_annihilator(gma: Gma):
    """Functionals on A + B vanishing on the diagonal parts of commutators."""
    field = gma.field
    da, db = gma.ctx.A.dim, gma.ctx.B.dim
    rows = []
    for e in range(gma.dim):
        for f in range(gma.dim):
            comm = gma.commutator(gma.basis_vector(e), gma.basis_vector(f))
            rows.append(gma.part_a(comm) + gma.part_b(comm))
    mat = Matrix(field, rows, cols=da + db)
    return kernel(mat)


def random_tau(gma: Gma, order: int, rng: random.Random) -> MapSequence:
    """A center-valued commutator-vanishing sequence built from the center
    basis and the commutator annihilator."""
    field = gma.field
    ctx = gma.ctx
    da, db = ctx.A.dim, ctx.B.dim
    pairs = center_gma(gma).pairs
    ann = commutator_annihilator(gma)
    mats = [Matrix.zeros(field, gma.dim, gma.dim)]
    for _ in range(order):
        cols = [None] * gma.dim
        coeff_rows = []
        for _t in range(len(pairs)):
            row = zero_vector(field, da + db)
            for basis_fn in ann.basis:
                c = rand_scalar(field, rng)
                if c != 0:
                    row = tuple(field.reduce(x + c * y)
                                for x, y in zip(row, basis_fn))
            coeff_rows.append(row)
        for idx in range(gma.dim):
            col = [field.zero] * gma.dim
            if idx in gma.a_range or idx in gma.b_range:
                if idx in gma.a_range:
                    ab = (unit_vector(field, da, idx - gma.a_range[0])
                          + zero_vector(field, db))
                else:
                    ab = (zero_vector(field, da)
                          + unit_vector(field, db, idx - gma.b_range[0]))
                for (za, zb), row in zip(pairs, coeff_rows):
                    c = field.reduce(sum(x * y for x, y in zip(row, ab)))
                    if c != 0:
                        for t, v in enumerate(za):
                            col[gma.a_range[0] + t] = field.reduce(
                                col[gma.a_range[0] + t] + c * v)
                        for t, v in enumerate(zb):
                            col[gma.b_range[0] + t] = field.reduce(
                                col[gma.b_range[0] + t] + c * v)
            cols[idx] = tuple(col)
        mats.append(Matrix.from_columns(field, cols))
    return MapSequence(gma, mats, is_tau=True)


def ingredients_from_parts(gma: Gma, order: int, d_seq: MapSequence,
                           tau: MapSequence) -> LhdIngredients:
    """Ingredient set whose synthesis reproduces d_seq + tau."""
    entries = extract_entries(d_seq)
    fam = hd_families(entries, order, gma)
    tau_entries = extract_entries(tau)
    P = [fam.P[0]] + [fam.P[k].add(tau_entries.block("p1", k))
                      for k in range(1, order + 1)]
    Q = [fam.Q[0]] + [fam.Q[k].add(tau_entries.block("q2", k))
                      for k in range(1, order + 1)]
    Qpp = [tau_entries.block("q1", k) for k in range(order + 1)]
    Ppp = [tau_entries.block("p2", k) for k in range(order + 1)]
    return LhdIngredients(
        P=P, Q=Q, Qpp=Qpp, Ppp=Ppp,
        f3=[entries.block("f3", k) for k in range(order + 1)],
        g4=[entries.block("g4", k) for k in range(order + 1)],
        m_elems=list(entries.m_elems), n_elems=list(entries.n_elems))


def random_lhd_ingredients(gma: Gma, order: int, rng: random.Random) -> LhdIngredients:
    d_seq = random_inner_hd(gma, order, rng)
    tau = random_tau(gma, order, rng)
    return ingredients_from_parts(gma, order, d_seq, tau)


def random_proper_lhd(gma: Gma, order: int, rng: random.Random) -> MapSequence:
    """A Lie higher derivation synthesized from guaranteed-valid ingredients;
    proper by construction."""
    return synthesize_lhd(gma, order, random_lhd_ingredients(gma, order, rng))


def perturb_to_non_lhd(seq: MapSequence, rng: random.Random,
                       attempts: int = 50) -> MapSequence:
    """A small perturbation of seq that fails the Lie identity."""
    gma = seq.gma
    field = gma.field
    for _ in range(attempts):
        k = rng.randint(1, seq.order)
        i = rng.randrange(gma.dim)
        j = rng.randrange(gma.dim)
        delta = rand_scalar(field, rng)
        if delta == 0:
            delta = field.one
        rows = [list(r) for r in seq.mats[k].data]
        rows[i][j] = field.reduce(rows[i][j] + delta)
        mats = list(seq.mats)
        mats[k] = Matrix(field, rows, cols=gma.dim)
        cand = MapSequence(gma, mats, is_tau=seq.is_tau)
        if not verify_lhd(cand).ok:
            return cand
    raise RuntimeError("could not perturb into a non-example")


def perturb_to_non_hd(seq: MapSequence, rng: random.Random,
                      attempts: int = 50) -> MapSequence:
    gma = seq.gma
    field = gma.field
    for _ in range(attempts):
        k = rng.randint(1, seq.order)
        i = rng.randrange(gma.dim)
        j = rng.randrange(gma.dim)
        delta = rand_scalar(field, rng)
        if delta == 0:
            delta = field.one
        rows = [list(r) for r in seq.mats[k].data]
        rows[i][j] = field.reduce(rows[i][j] + delta)
        mats = list(seq.mats)
        mats[k] = Matrix(field, rows, cols=gma.dim)
        cand = MapSequence(gma, mats, is_tau=seq.is_tau)
        if not verify_hd(cand).ok:
            return cand
    raise RuntimeError("could not perturb into a non-example")


def perturb_tau(tau: MapSequence, rng: random.Random,
                attempts: int = 50) -> MapSequence:
    """A perturbation of tau failing the center-valued/commutator checks."""
    from .mapseq import is_center_valued_vanishing
    gma = tau.gma
    field = gma.field
    for _ in range(attempts):
        k = rng.randint(1, tau.order)
        i = rng.randrange(gma.dim)
        j = rng.randrange(gma.dim)
        delta = rand_scalar(field, rng)
        if delta == 0:
            delta = field.one
        rows = [list(r) for r in tau.mats[k].data]
        rows[i][j] = field.reduce(rows[i][j] + delta)
        mats = list(tau.mats)
        mats[k] = Matrix(field, rows, cols=gma.dim)
        cand = MapSequence(gma, mats, is_tau=True)
        if not is_center_valued_vanishing(cand).ok:
            return cand
    raise RuntimeError("could not perturb tau into a non-example")


def benkovic_improper_variants(field: Field, rng: random.Random,
                               count: int, max_order: int = 3) -> list:
    """Improper sequences on the trivial-context fixture: the base map, its
    ordinary extensions, gradings, and center-valued shifts."""
    gma = benkovic(field)
    base = benkovic_improper_map(gma)
    out = []
    while len(out) < count:
        order = rng.randint(1, max_order)
        seq = ordinary_sequence(gma, base, order)
        style = rng.randrange(3)
        if style == 1:
            lam = rand_scalar(field, rng)
            if lam == 0 or lam == field.one:
                lam = field.reduce(field.one + field.one)
            seq = seq_grade(seq, lam)
        elif style == 2:
            seq = seq_sum(seq, random_tau(gma, order, rng))
        out.append(seq)
    return out
