"""Combinatorial structure machinery for map sequences on a 2x2 block algebra.

This module owns the alternating word sums over the distinguished module
elements m_1..m_K and n_1..n_K, the recursively defined auxiliary map
families attached to a sequence (one set of families for the Lie side, a
parallel sans-serif set for the multiplicative side), the per-condition
checkers for the two structure theorems and for the center-valued-sequence
characterization, and a synthesizer that assembles a Lie higher derivation
from a valid ingredient set.

Index conventions: all families are stored as lists indexed 0..K.  Word
sums use the convention that a length-one index word contributes an empty
alternating tail (empty products act as omitted factors), and the order-0
word-sum elements are zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Optional, Sequence

from .linalg import Matrix, is_zero_vector, unit_vector, zero_vector
from .algebra import center as algebra_center
from .gma import Gma, center_gma
from .mapseq import (
    BLOCK_NAMES, EntryMaps, MapSequence, reconstruct, verify_lhd,
)


class StructureError(ValueError):
    pass


class IngredientError(StructureError):
    def __init__(self, condition: str, detail=None):
        super().__init__(f"inconsistent ingredients: condition {condition}")
        self.condition = condition
        self.detail = detail


def eta(k: int) -> int:
    """Maximum word length in the auxiliary-family sums at order k."""
    if k < 1:
        raise StructureError("eta is defined for k >= 1")
    return (k - 1) // 2 if k % 2 else k // 2


def nu(k: int) -> int:
    """Maximum word length in the order-k module word sums."""
    if k < 1:
        raise StructureError("nu is defined for k >= 1")
    return (k - 1) // 2 if k % 2 else k // 2 - 1


def pos_compositions(total: int, parts: int):
    """All tuples of `parts` positive integers summing to `total`, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in pos_compositions(total - first, parts - 1):
            yield (first,) + rest


def family_word_indices(k: int):
    """(r, i, alphas, betas) with i + sum(alphas + betas) = k and i <= k - 2.

    Canonical order: r ascending, then i ascending, then the concatenated
    index tuple lexicographic.  Each admissible tuple appears exactly once.
    """
    for r in range(1, eta(k) + 1):
        for i in range(0, k - 1):
            rem = k - i
            if rem < 2 * r:
                continue
            for comb in pos_compositions(rem, 2 * r):
                yield r, i, comb[:r], comb[r:]


def word_sum_indices(k: int):
    """(r, alphas, betas, gamma) with sum(alphas + betas) + gamma = k; k >= 3."""
    for r in range(1, nu(k) + 1):
        for comb in pos_compositions(k, 2 * r + 1):
            yield r, comb[:r], comb[r:2 * r], comb[2 * r]


def g_chain(gma: Gma, factors: Sequence[tuple]) -> tuple:
    """Left-to-right product of embedded elements inside the block algebra."""
    out = factors[0]
    for f in factors[1:]:
        out = gma.mul(out, f)
    return out


def word_sums(gma: Gma, m_elems: Sequence, n_elems: Sequence, k: int):
    """The order-k alternating word sums (N_k, M_k) over given module elements.

    m_elems/n_elems are indexed from 0 (index 0 ignored); the result is a
    pair of coordinate vectors in N resp. M.
    """
    if k < 1 or k >= len(m_elems):
        raise StructureError("word_sums needs elements up to index k")
    if k <= 2:
        return tuple(n_elems[k]), tuple(m_elems[k])
    field = gma.field
    ctx = gma.ctx
    m_emb = [gma.embed_m(m) for m in m_elems]
    n_emb = [gma.embed_n(n) for n in n_elems]
    total_n = [field.zero] * gma.dim
    total_m = [field.zero] * gma.dim
    for r, alphas, betas, gamma in word_sum_indices(k):
        factors_n = []
        factors_m = []
        for a, b in zip(alphas, betas):
            factors_n += [n_emb[a], m_emb[b]]
            factors_m += [m_emb[b], n_emb[a]]
        factors_n.append(n_emb[gamma])
        factors_m.append(m_emb[gamma])
        wn = g_chain(gma, factors_n)
        wm = g_chain(gma, factors_m)
        total_n = [x + y for x, y in zip(total_n, wn)]
        total_m = [x + y for x, y in zip(total_m, wm)]
    red = field.reduce
    total_n = tuple(red(x) for x in total_n)
    total_m = tuple(red(x) for x in total_m)
    n_part = gma.part_n(total_n)
    m_part = gma.part_m(total_m)
    n_final = tuple(red(a + b) for a, b in zip(n_part, n_elems[k]))
    m_final = tuple(red(a + b) for a, b in zip(m_part, m_elems[k]))
    return n_final, m_final


def word_sums_all(gma: Gma, m_elems: Sequence, n_elems: Sequence, order: int):
    """Lists N_0..N_order and M_0..M_order (order 0 entries are zero)."""
    caln = [zero_vector(gma.field, gma.ctx.N.dim)]
    calm = [zero_vector(gma.field, gma.ctx.M.dim)]
    for k in range(1, order + 1):
        nk, mk = word_sums(gma, m_elems, n_elems, k)
        caln.append(nk)
        calm.append(mk)
    return caln, calm


# ---------------------------------------------------------------------------
# auxiliary map families
# ---------------------------------------------------------------------------

def _sub_vec(field, u, v):
    return tuple(field.reduce(a - b) for a, b in zip(u, v))


def _family_matrix(gma: Gma, k: int, in_dim: int, out_part: Callable,
                   word_factors: Callable) -> Matrix:
    """Matrix of x -> sum over family_word_indices(k) of a word product.

    `word_factors(i, alphas, betas, x)` returns embedded factors for one
    summand; `out_part` extracts the output block of the accumulated total.
    """
    field = gma.field
    cols = []
    indices = list(family_word_indices(k))
    for e in range(in_dim):
        x = unit_vector(field, in_dim, e)
        total = [field.zero] * gma.dim
        for r, i, alphas, betas in indices:
            w = g_chain(gma, word_factors(i, alphas, betas, x))
            total = [a + b for a, b in zip(total, w)]
        cols.append(out_part(tuple(field.reduce(v) for v in total)))
    return Matrix.from_columns(field, cols)


@dataclass
class LhdFamilies:
    """The Lie-side families attached to a sequence's entry maps."""
    order: int
    P: list
    Pp: list
    Ppp: list   # B -> A
    Q: list
    Qp: list
    Qpp: list   # A -> B
    low_p: list
    low_pp: list
    low_ppp: list
    low_q: list
    low_qp: list
    low_qpp: list
    low_ppp_alt: list
    low_qpp_alt: list
    caln: list
    calm: list
    diagnostics: list = dataclass_field(default_factory=list)


@dataclass
class HdFamilies:
    """The multiplicative-side (sans-serif) families."""
    order: int
    P: list
    Pp: list
    Q: list
    Qp: list
    low_p: list
    low_pp: list
    low_q: list
    low_qp: list
    caln: list
    calm: list
    diagnostics: list = dataclass_field(default_factory=list)


def _interleave(pairs):
    out = []
    for x, y in pairs:
        out += [x, y]
    return out


def lhd_families(entries: EntryMaps, order: int, gma: Gma) -> LhdFamilies:
    """Recursive families P, P', P'', Q, Q', Q'' and their word corrections."""
    field = gma.field
    da, db = gma.ctx.A.dim, gma.ctx.B.dim
    m_emb = [gma.embed_m(m) for m in entries.m_elems]
    n_emb = [gma.embed_n(n) for n in entries.n_elems]
    caln, calm = word_sums_all(gma, entries.m_elems, entries.n_elems, order)

    ident_a = Matrix.identity(field, da)
    ident_b = Matrix.identity(field, db)
    zero_aa = Matrix.zeros(field, da, da)
    zero_ab = Matrix.zeros(field, da, db)
    zero_bb = Matrix.zeros(field, db, db)
    zero_ba = Matrix.zeros(field, db, da)

    fam = LhdFamilies(
        order=order,
        P=[ident_a], Pp=[ident_a], Ppp=[zero_ab],
        Q=[ident_b], Qp=[ident_b], Qpp=[zero_ba],
        low_p=[zero_aa], low_pp=[zero_aa], low_ppp=[zero_ab],
        low_q=[zero_bb], low_qp=[zero_bb], low_qpp=[zero_ba],
        low_ppp_alt=[zero_ab], low_qpp_alt=[zero_ba],
        caln=caln, calm=calm)

    emb_a, emb_b = gma.embed_a, gma.embed_b
    mul = gma.mul

    def head_m(left_mat, right_mat, b1, x):
        """left(x).m_{b1} - m_{b1}.right(x) as an embedded M-block element."""
        lhs = mul(emb_a(left_mat.apply(x)), m_emb[b1])
        rhs = mul(m_emb[b1], emb_b(right_mat.apply(x)))
        return _sub_vec(field, lhs, rhs)

    def head_n(left_mat, right_mat, a1, x):
        """left(x).n_{a1} - n_{a1}.right(x) with B-valued left, A-valued right
        swapped appropriately by the callers."""
        lhs = mul(emb_b(left_mat.apply(x)), n_emb[a1])
        rhs = mul(n_emb[a1], emb_a(right_mat.apply(x)))
        return _sub_vec(field, lhs, rhs)

    for k in range(1, order + 1):
        if k == 1:
            low = dict(p=zero_aa, pp=zero_aa, ppp=zero_ab, ppp_alt=zero_ab,
                       q=zero_bb, qp=zero_bb, qpp=zero_ba, qpp_alt=zero_ba)
        else:
            def p_words(i, alphas, betas, x):
                head = head_m(fam.P[i], fam.Qpp[i], betas[0], x)
                return [head, n_emb[alphas[0]]] + _interleave(
                    (m_emb[b], n_emb[a]) for a, b in zip(alphas[1:], betas[1:]))

            def pp_words(i, alphas, betas, x):
                tail = _sub_vec(field,
                                mul(n_emb[alphas[0]], emb_a(fam.Pp[i].apply(x))),
                                mul(emb_b(fam.Qpp[i].apply(x)), n_emb[alphas[0]]))
                pre = _interleave((m_emb[b], n_emb[a]) for a, b in
                                  zip(reversed(alphas[1:]), reversed(betas[1:])))
                return pre + [m_emb[betas[0]], tail]

            def ppp_words(i, alphas, betas, x):
                head = _sub_vec(field,
                                mul(m_emb[betas[0]], emb_b(fam.Q[i].apply(x))),
                                mul(emb_a(fam.Ppp[i].apply(x)), m_emb[betas[0]]))
                return [head, n_emb[alphas[0]]] + _interleave(
                    (m_emb[b], n_emb[a]) for a, b in zip(alphas[1:], betas[1:]))

            def ppp_alt_words(i, alphas, betas, x):
                tail = _sub_vec(field,
                                mul(emb_b(fam.Qp[i].apply(x)), n_emb[alphas[0]]),
                                mul(n_emb[alphas[0]], emb_a(fam.Ppp[i].apply(x))))
                pre = _interleave((m_emb[b], n_emb[a]) for a, b in
                                  zip(reversed(alphas[1:]), reversed(betas[1:])))
                return pre + [m_emb[betas[0]], tail]

            def q_words(i, alphas, betas, x):
                head = _sub_vec(field,
                                mul(m_emb[betas[0]], emb_b(fam.Q[i].apply(x))),
                                mul(emb_a(fam.Ppp[i].apply(x)), m_emb[betas[0]]))
                pre = _interleave((n_emb[a], m_emb[b]) for a, b in
                                  zip(reversed(alphas[1:]), reversed(betas[1:])))
                return pre + [n_emb[alphas[0]], head]

            def qp_words(i, alphas, betas, x):
                head = _sub_vec(field,
                                mul(emb_b(fam.Qp[i].apply(x)), n_emb[alphas[0]]),
                                mul(n_emb[alphas[0]], emb_a(fam.Ppp[i].apply(x))))
                return [head, m_emb[betas[0]]] + _interleave(
                    (n_emb[a], m_emb[b]) for a, b in zip(alphas[1:], betas[1:]))

            def qpp_words(i, alphas, betas, x):
                head = head_m(fam.P[i], fam.Qpp[i], betas[0], x)
                pre = _interleave((n_emb[a], m_emb[b]) for a, b in
                                  zip(reversed(alphas[1:]), reversed(betas[1:])))
                return pre + [n_emb[alphas[0]], head]

            def qpp_alt_words(i, alphas, betas, x):
                head = _sub_vec(field,
                                mul(n_emb[alphas[0]], emb_a(fam.Pp[i].apply(x))),
                                mul(emb_b(fam.Qpp[i].apply(x)), n_emb[alphas[0]]))
                return [head, m_emb[betas[0]]] + _interleave(
                    (n_emb[a], m_emb[b]) for a, b in zip(alphas[1:], betas[1:]))

            low = dict(
                p=_family_matrix(gma, k, da, gma.part_a, p_words),
                pp=_family_matrix(gma, k, da, gma.part_a, pp_words),
                ppp=_family_matrix(gma, k, db, gma.part_a, ppp_words),
                ppp_alt=_family_matrix(gma, k, db, gma.part_a, ppp_alt_words),
                q=_family_matrix(gma, k, db, gma.part_b, q_words),
                qp=_family_matrix(gma, k, db, gma.part_b, qp_words),
                qpp=_family_matrix(gma, k, da, gma.part_b, qpp_words),
                qpp_alt=_family_matrix(gma, k, da, gma.part_b, qpp_alt_words))

        if low["ppp"] != low["ppp_alt"]:
            fam.diagnostics.append(
                f"order {k}: the two displayed expressions for the lower p'' differ")
        if low["qpp"] != low["qpp_alt"]:
            fam.diagnostics.append(
                f"order {k}: the two displayed expressions for the lower q'' differ")

        fam.low_p.append(low["p"])
        fam.low_pp.append(low["pp"])
        fam.low_ppp.append(low["ppp"])
        fam.low_ppp_alt.append(low["ppp_alt"])
        fam.low_q.append(low["q"])
        fam.low_qp.append(low["qp"])
        fam.low_qpp.append(low["qpp"])
        fam.low_qpp_alt.append(low["qpp_alt"])

        fam.P.append(entries.block("p1", k).add(low["p"]))
        fam.Pp.append(entries.block("p1", k).add(low["pp"]))
        fam.Ppp.append(entries.block("p2", k).sub(low["ppp"]))
        fam.Q.append(entries.block("q2", k).add(low["q"]))
        fam.Qp.append(entries.block("q2", k).add(low["qp"]))
        fam.Qpp.append(entries.block("q1", k).sub(low["qpp"]))
    return fam


def hd_families(entries: EntryMaps, order: int, gma: Gma) -> HdFamilies:
    """Sans-serif families for the multiplicative identities."""
    field = gma.field
    da, db = gma.ctx.A.dim, gma.ctx.B.dim
    m_emb = [gma.embed_m(m) for m in entries.m_elems]
    n_emb = [gma.embed_n(n) for n in entries.n_elems]
    caln, calm = word_sums_all(gma, entries.m_elems, entries.n_elems, order)

    ident_a = Matrix.identity(field, da)
    ident_b = Matrix.identity(field, db)
    zero_aa = Matrix.zeros(field, da, da)
    zero_bb = Matrix.zeros(field, db, db)

    fam = HdFamilies(order=order, P=[ident_a], Pp=[ident_a],
                     Q=[ident_b], Qp=[ident_b],
                     low_p=[zero_aa], low_pp=[zero_aa],
                     low_q=[zero_bb], low_qp=[zero_bb],
                     caln=caln, calm=calm)
    emb_a, emb_b = gma.embed_a, gma.embed_b
    for k in range(1, order + 1):
        if k == 1:
            low = dict(p=zero_aa, pp=zero_aa, q=zero_bb, qp=zero_bb)
        else:
            def p_words(i, alphas, betas, x):
                return ([emb_a(fam.P[i].apply(x)), m_emb[betas[0]], n_emb[alphas[0]]]
                        + _interleave((m_emb[b], n_emb[a])
                                      for a, b in zip(alphas[1:], betas[1:])))

            def pp_words(i, alphas, betas, x):
                return ([m_emb[betas[0]], n_emb[alphas[0]]]
                        + _interleave((m_emb[b], n_emb[a])
                                      for a, b in zip(alphas[1:], betas[1:]))
                        + [emb_a(fam.Pp[i].apply(x))])

            def q_words(i, alphas, betas, x):
                return (_interleave((n_emb[a], m_emb[b]) for a, b in
                                    zip(reversed(alphas[1:]), reversed(betas[1:])))
                        + [n_emb[alphas[0]], m_emb[betas[0]], emb_b(fam.Q[i].apply(x))])

            def qp_words(i, alphas, betas, x):
                return ([emb_b(fam.Qp[i].apply(x))]
                        + _interleave((n_emb[a], m_emb[b]) for a, b in
                                      zip(reversed(alphas[1:]), reversed(betas[1:])))
                        + [n_emb[alphas[0]], m_emb[betas[0]]])

            low = dict(
                p=_family_matrix(gma, k, da, gma.part_a, p_words),
                pp=_family_matrix(gma, k, da, gma.part_a, pp_words),
                q=_family_matrix(gma, k, db, gma.part_b, q_words),
                qp=_family_matrix(gma, k, db, gma.part_b, qp_words))

        fam.low_p.append(low["p"])
        fam.low_pp.append(low["pp"])
        fam.low_q.append(low["q"])
        fam.low_qp.append(low["qp"])
        fam.P.append(entries.block("p1", k).add(low["p"]))
        fam.Pp.append(entries.block("p1", k).add(low["pp"]))
        fam.Q.append(entries.block("q2", k).add(low["q"]))
        fam.Qp.append(entries.block("q2", k).add(low["qp"]))
    return fam


def hd_cross_words(gma: Gma, k: int, P: Sequence, Pp: Sequence,
                   Q: Sequence, Qp: Sequence, m_elems, n_elems):
    """The determined q1/p2 blocks of a multiplicative sequence at order k,
    both displayed variants of each."""
    field = gma.field
    da, db = gma.ctx.A.dim, gma.ctx.B.dim
    m_emb = [gma.embed_m(m) for m in m_elems]
    n_emb = [gma.embed_n(n) for n in n_elems]
    emb_a, emb_b = gma.embed_a, gma.embed_b

    def q1_words(i, alphas, betas, x):
        return (_interleave((n_emb[a], m_emb[b]) for a, b in
                            zip(reversed(alphas[1:]), reversed(betas[1:])))
                + [n_emb[alphas[0]], emb_a(P[i].apply(x)), m_emb[betas[0]]])

    def q1_alt_words(i, alphas, betas, x):
        return ([n_emb[alphas[0]], emb_a(Pp[i].apply(x)), m_emb[betas[0]]]
                + _interleave((n_emb[a], m_emb[b])
                              for a, b in zip(alphas[1:], betas[1:])))

    def p2_words(i, alphas, betas, x):
        return ([m_emb[betas[0]], emb_b(Q[i].apply(x)), n_emb[alphas[0]]]
                + _interleave((m_emb[b], n_emb[a])
                              for a, b in zip(alphas[1:], betas[1:])))

    def p2_alt_words(i, alphas, betas, x):
        return (_interleave((m_emb[b], n_emb[a]) for a, b in
                            zip(reversed(alphas[1:]), reversed(betas[1:])))
                + [m_emb[betas[0]], emb_b(Qp[i].apply(x)), n_emb[alphas[0]]])

    q1 = _family_matrix(gma, k, da, gma.part_b, q1_words)
    q1_alt = _family_matrix(gma, k, da, gma.part_b, q1_alt_words)
    p2 = _family_matrix(gma, k, db, gma.part_a, p2_words)
    p2_alt = _family_matrix(gma, k, db, gma.part_a, p2_alt_words)
    return q1, q1_alt, p2, p2_alt


# ---------------------------------------------------------------------------
# condition reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    condition: str
    k: int
    where: tuple
    detail: str = ""


@dataclass
class ConditionReport:
    violations: list
    diagnostics: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def conditions_hit(self) -> set:
        return {v.condition for v in self.violations}


def _check_family_lhd(vio, tag, alg, fam_list, order):
    """fam_list is a Lie higher derivation on alg: bracket identity per k."""
    dim = alg.dim
    for k in range(1, order + 1):
        for e in range(dim):
            for f in range(dim):
                comm = alg.commutator(alg.basis_vector(e), alg.basis_vector(f))
                lhs = fam_list[k].apply(comm)
                rhs = [alg.field.zero] * dim
                for i in range(k + 1):
                    u = fam_list[i].column(e)
                    v = fam_list[k - i].column(f)
                    uv = alg.mul(u, v)
                    vu = alg.mul(v, u)
                    rhs = [a + b - c for a, b, c in zip(rhs, uv, vu)]
                rhs = tuple(alg.field.reduce(x) for x in rhs)
                if lhs != rhs:
                    vio.append(Violation("(1)", k, (e, f),
                                         f"{tag} fails the Lie identity"))


def _check_family_hd(vio, cond, tag, alg, fam_list, order):
    dim = alg.dim
    for k in range(1, order + 1):
        for e in range(dim):
            for f in range(dim):
                prod = alg.tensor[e][f]
                lhs = fam_list[k].apply(prod)
                rhs = [alg.field.zero] * dim
                for i in range(k + 1):
                    term = alg.mul(fam_list[i].column(e), fam_list[k - i].column(f))
                    rhs = [a + b for a, b in zip(rhs, term)]
                rhs = tuple(alg.field.reduce(x) for x in rhs)
                if lhs != rhs:
                    vio.append(Violation(cond, k, (e, f),
                                         f"{tag} fails the product identity"))


def check_lhd_conditions(entries: EntryMaps, order: int, gma: Gma,
                         families: Optional[LhdFamilies] = None) -> ConditionReport:
    """Evaluate the twelve Lie-structure conditions on all basis tuples."""
    fam = families if families is not None else lhd_families(entries, order, gma)
    field = gma.field
    ctx = gma.ctx
    A, B, M, N = ctx.A, ctx.B, ctx.M, ctx.N
    vio: list = []
    diagnostics = list(fam.diagnostics)

    # (1) family conditions
    _check_family_lhd(vio, "P", A, fam.P, order)
    _check_family_lhd(vio, "P'", A, fam.Pp, order)
    _check_family_lhd(vio, "Q", B, fam.Q, order)
    _check_family_lhd(vio, "Q'", B, fam.Qp, order)
    za = algebra_center(A)
    zb = algebra_center(B)
    for k in range(1, order + 1):
        for e in range(A.dim):
            if not zb.contains(fam.Qpp[k].column(e)):
                vio.append(Violation("(1)", k, (e,), "Q'' not centrally valued"))
        for e in range(B.dim):
            if not za.contains(fam.Ppp[k].column(e)):
                vio.append(Violation("(1)", k, (e,), "P'' not centrally valued"))
        for e in range(A.dim):
            for f in range(A.dim):
                comm = A.commutator(A.basis_vector(e), A.basis_vector(f))
                if not is_zero_vector(fam.Qpp[k].apply(comm)):
                    vio.append(Violation("(1)", k, (e, f),
                                         "Q'' does not kill commutators"))
        for e in range(B.dim):
            for f in range(B.dim):
                comm = B.commutator(B.basis_vector(e), B.basis_vector(f))
                if not is_zero_vector(fam.Ppp[k].apply(comm)):
                    vio.append(Violation("(1)", k, (e, f),
                                         "P'' does not kill commutators"))

    def add_vec(u, v):
        return tuple(field.reduce(a + b) for a, b in zip(u, v))

    m_elems, n_elems = entries.m_elems, entries.n_elems
    for k in range(1, order + 1):
        # (2): g1 and f1 are determined
        for e in range(A.dim):
            a = A.basis_vector(e)
            g1 = zero_vector(field, N.dim)
            f1 = zero_vector(field, M.dim)
            for i in range(1, k + 1):
                j = k - i
                g1 = add_vec(g1, _sub_vec(field,
                                          N.right_act(n_elems[i], fam.Pp[j].apply(a)),
                                          N.left_act(fam.Qpp[j].apply(a), n_elems[i])))
                f1 = add_vec(f1, _sub_vec(field,
                                          M.left_act(fam.P[j].apply(a), m_elems[i]),
                                          M.right_act(m_elems[i], fam.Qpp[j].apply(a))))
            if entries.block("g1", k).column(e) != g1:
                vio.append(Violation("(2)", k, (e,), "g1 mismatch"))
            if entries.block("f1", k).column(e) != f1:
                vio.append(Violation("(2)", k, (e,), "f1 mismatch"))
        # (3): g2 and f2 are determined
        for e in range(B.dim):
            b = B.basis_vector(e)
            g2 = zero_vector(field, N.dim)
            f2 = zero_vector(field, M.dim)
            for i in range(1, k + 1):
                j = k - i
                g2 = add_vec(g2, _sub_vec(field,
                                          N.left_act(fam.Qp[j].apply(b), n_elems[i]),
                                          N.right_act(n_elems[i], fam.Ppp[j].apply(b))))
                f2 = add_vec(f2, _sub_vec(field,
                                          M.right_act(m_elems[i], fam.Q[j].apply(b)),
                                          M.left_act(fam.Ppp[j].apply(b), m_elems[i])))
            g2 = tuple(field.reduce(-x) for x in g2)
            f2 = tuple(field.reduce(-x) for x in f2)
            if entries.block("g2", k).column(e) != g2:
                vio.append(Violation("(3)", k, (e,), "g2 mismatch"))
            if entries.block("f2", k).column(e) != f2:
                vio.append(Violation("(3)", k, (e,), "f2 mismatch"))
        # (4) and (5): f3 action compatibility
        f3 = entries.blocks["f3"]
        for e in range(A.dim):
            a = A.basis_vector(e)
            for f in range(M.dim):
                m = M.basis_vector(f)
                lhs = f3[k].apply(M.left_act(a, m))
                rhs = zero_vector(field, M.dim)
                for i in range(k + 1):
                    j = k - i
                    rhs = add_vec(rhs, _sub_vec(field,
                                                M.left_act(fam.P[i].apply(a), f3[j].apply(m)),
                                                M.right_act(f3[j].apply(m), fam.Qpp[i].apply(a))))
                if lhs != rhs:
                    vio.append(Violation("(4)", k, (e, f), "f3(am) mismatch"))
        for e in range(B.dim):
            b = B.basis_vector(e)
            for f in range(M.dim):
                m = M.basis_vector(f)
                lhs = f3[k].apply(M.right_act(m, b))
                rhs = zero_vector(field, M.dim)
                for i in range(k + 1):
                    j = k - i
                    rhs = add_vec(rhs, _sub_vec(field,
                                                M.right_act(f3[j].apply(m), fam.Q[i].apply(b)),
                                                M.left_act(fam.Ppp[i].apply(b), f3[j].apply(m))))
                if lhs != rhs:
                    vio.append(Violation("(5)", k, (e, f), "f3(mb) mismatch"))
        # (6) and (7): g4 action compatibility
        g4 = entries.blocks["g4"]
        for e in range(A.dim):
            a = A.basis_vector(e)
            for f in range(N.dim):
                n = N.basis_vector(f)
                lhs = g4[k].apply(N.right_act(n, a))
                rhs = zero_vector(field, N.dim)
                for i in range(k + 1):
                    j = k - i
                    rhs = add_vec(rhs, _sub_vec(field,
                                                N.right_act(g4[j].apply(n), fam.Pp[i].apply(a)),
                                                N.left_act(fam.Qpp[i].apply(a), g4[j].apply(n))))
                if lhs != rhs:
                    vio.append(Violation("(6)", k, (e, f), "g4(na) mismatch"))
        for e in range(B.dim):
            b = B.basis_vector(e)
            for f in range(N.dim):
                n = N.basis_vector(f)
                lhs = g4[k].apply(N.left_act(b, n))
                rhs = zero_vector(field, N.dim)
                for i in range(k + 1):
                    j = k - i
                    rhs = add_vec(rhs, _sub_vec(field,
                                                N.left_act(fam.Qp[i].apply(b), g4[j].apply(n)),
                                                N.right_act(g4[j].apply(n), fam.Ppp[i].apply(b))))
                if lhs != rhs:
                    vio.append(Violation("(7)", k, (e, f), "g4(bn) mismatch"))
        # (8), (9), (10): module blocks are word-determined
        _check_module_blocks(vio, entries, fam.caln, fam.calm, k, gma,
                             ("(8)", "(9)", "(10)"))
        # (11) and (12)
        _check_pairing_conditions(vio, entries, k, gma, ("(11)", "(12)"))
    return ConditionReport(vio, diagnostics)


def _check_module_blocks(vio, entries, caln, calm, k, gma, conds):
    """Blocks g3/f4 (first), p3/q3 (second), p4/q4 (third) at order k."""
    field = gma.field
    ctx = gma.ctx
    M, N = ctx.M, ctx.N
    c8, c9, c10 = conds
    f3 = entries.blocks["f3"]
    g4 = entries.blocks["g4"]
    n_words = [gma.embed_n(v) for v in caln]
    m_words = [gma.embed_m(v) for v in calm]

    for e in range(M.dim):
        m = M.basis_vector(e)
        total = [field.zero] * gma.dim
        for i in range(1, k + 1):
            for j in range(1, k + 1 - i):
                r = k - i - j
                w = g_chain(gma, [n_words[i], gma.embed_m(f3[r].apply(m)), n_words[j]])
                total = [a + b for a, b in zip(total, w)]
        expected = tuple(field.reduce(-x) for x in gma.part_n(tuple(total)))
        if entries.block("g3", k).column(e) != expected:
            vio.append(Violation(c8, k, (e,), "g3 mismatch"))
        p3 = zero_vector(field, ctx.A.dim)
        q3 = zero_vector(field, ctx.B.dim)
        for j in range(1, k + 1):
            i = k - j
            v = f3[i].apply(m)
            p3 = tuple(field.reduce(a - b) for a, b in
                       zip(p3, ctx.pair_mn(v, caln[j])))
            q3 = tuple(field.reduce(a + b) for a, b in
                       zip(q3, ctx.pair_nm(caln[j], v)))
        if entries.block("p3", k).column(e) != p3:
            vio.append(Violation(c9, k, (e,), "p3 mismatch"))
        if entries.block("q3", k).column(e) != q3:
            vio.append(Violation(c9, k, (e,), "q3 mismatch"))
    for e in range(N.dim):
        n = N.basis_vector(e)
        total = [field.zero] * gma.dim
        for i in range(1, k + 1):
            for j in range(1, k + 1 - i):
                r = k - i - j
                w = g_chain(gma, [m_words[i], gma.embed_n(g4[r].apply(n)), m_words[j]])
                total = [a + b for a, b in zip(total, w)]
        expected = tuple(field.reduce(-x) for x in gma.part_m(tuple(total)))
        if entries.block("f4", k).column(e) != expected:
            vio.append(Violation(c8, k, (e,), "f4 mismatch"))
        p4 = zero_vector(field, ctx.A.dim)
        q4 = zero_vector(field, ctx.B.dim)
        for j in range(1, k + 1):
            i = k - j
            v = g4[i].apply(n)
            p4 = tuple(field.reduce(a - b) for a, b in
                       zip(p4, ctx.pair_mn(calm[j], v)))
            q4 = tuple(field.reduce(a + b) for a, b in
                       zip(q4, ctx.pair_nm(v, calm[j])))
        if entries.block("p4", k).column(e) != p4:
            vio.append(Violation(c10, k, (e,), "p4 mismatch"))
        if entries.block("q4", k).column(e) != q4:
            vio.append(Violation(c10, k, (e,), "q4 mismatch"))


def _check_pairing_conditions(vio, entries, k, gma, conds):
    """The Lie-side pairing-compatibility conditions on (m, n) basis pairs."""
    field = gma.field
    ctx = gma.ctx
    ca, cb = conds
    b = entries.blocks
    for e in range(ctx.M.dim):
        m = ctx.M.basis_vector(e)
        for f in range(ctx.N.dim):
            n = ctx.N.basis_vector(f)
            mn = ctx.pair_mn(m, n)
            nm = ctx.pair_nm(n, m)
            lhs_a = _sub_vec(field, b["p1"][k].apply(mn), b["p2"][k].apply(nm))
            lhs_b = _sub_vec(field, b["q1"][k].apply(mn), b["q2"][k].apply(nm))
            rhs_a = zero_vector(field, ctx.A.dim)
            rhs_b = zero_vector(field, ctx.B.dim)
            for i in range(k + 1):
                j = k - i
                p3m = b["p3"][i].apply(m)
                p4n = b["p4"][j].apply(n)
                f3m = b["f3"][i].apply(m)
                g4n = b["g4"][j].apply(n)
                f4n = b["f4"][j].apply(n)
                g3m = b["g3"][i].apply(m)
                q3m = b["q3"][i].apply(m)
                q4n = b["q4"][j].apply(n)
                term_a = [x + y - z - w for x, y, z, w in
                          zip(ctx.A.mul(p3m, p4n), ctx.pair_mn(f3m, g4n),
                              ctx.A.mul(p4n, p3m), ctx.pair_mn(f4n, g3m))]
                term_b = [x + y - z - w for x, y, z, w in
                          zip(ctx.pair_nm(g3m, f4n), ctx.B.mul(q3m, q4n),
                              ctx.pair_nm(g4n, f3m), ctx.B.mul(q4n, q3m))]
                rhs_a = [x + y for x, y in zip(rhs_a, term_a)]
                rhs_b = [x + y for x, y in zip(rhs_b, term_b)]
            rhs_a = tuple(field.reduce(x) for x in rhs_a)
            rhs_b = tuple(field.reduce(x) for x in rhs_b)
            if lhs_a != rhs_a:
                vio.append(Violation(ca, k, (e, f), "A-side pairing mismatch"))
            if lhs_b != rhs_b:
                vio.append(Violation(cb, k, (e, f), "B-side pairing mismatch"))


def check_hd_conditions(entries: EntryMaps, order: int, gma: Gma,
                        families: Optional[HdFamilies] = None) -> ConditionReport:
    """Evaluate the multiplicative structure conditions (a)-(n)."""
    fam = families if families is not None else hd_families(entries, order, gma)
    field = gma.field
    ctx = gma.ctx
    A, B, M, N = ctx.A, ctx.B, ctx.M, ctx.N
    vio: list = []
    diagnostics = list(fam.diagnostics)

    _check_family_hd(vio, "(a)", "P", A, fam.P, order)
    _check_family_hd(vio, "(a)", "P'", A, fam.Pp, order)
    _check_family_hd(vio, "(a)", "Q", B, fam.Q, order)
    _check_family_hd(vio, "(a)", "Q'", B, fam.Qp, order)

    def add_vec(u, v):
        return tuple(field.reduce(a + b) for a, b in zip(u, v))

    m_elems, n_elems = entries.m_elems, entries.n_elems
    for k in range(1, order + 1):
        # (b), (c)
        for e in range(A.dim):
            a = A.basis_vector(e)
            g1 = zero_vector(field, N.dim)
            f1 = zero_vector(field, M.dim)
            for i in range(1, k + 1):
                j = k - i
                g1 = add_vec(g1, N.right_act(n_elems[i], fam.Pp[j].apply(a)))
                f1 = add_vec(f1, M.left_act(fam.P[j].apply(a), m_elems[i]))
            if entries.block("g1", k).column(e) != g1:
                vio.append(Violation("(b)", k, (e,), "g1 mismatch"))
            if entries.block("f1", k).column(e) != f1:
                vio.append(Violation("(b)", k, (e,), "f1 mismatch"))
        for e in range(B.dim):
            bb = B.basis_vector(e)
            g2 = zero_vector(field, N.dim)
            f2 = zero_vector(field, M.dim)
            for i in range(1, k + 1):
                j = k - i
                g2 = add_vec(g2, N.left_act(fam.Qp[j].apply(bb), n_elems[i]))
                f2 = add_vec(f2, M.right_act(m_elems[i], fam.Q[j].apply(bb)))
            g2 = tuple(field.reduce(-x) for x in g2)
            f2 = tuple(field.reduce(-x) for x in f2)
            if entries.block("g2", k).column(e) != g2:
                vio.append(Violation("(c)", k, (e,), "g2 mismatch"))
            if entries.block("f2", k).column(e) != f2:
                vio.append(Violation("(c)", k, (e,), "f2 mismatch"))
        # (d)
        f3 = entries.blocks["f3"]
        for e in range(A.dim):
            a = A.basis_vector(e)
            for f in range(M.dim):
                m = M.basis_vector(f)
                lhs = f3[k].apply(M.left_act(a, m))
                rhs = zero_vector(field, M.dim)
                for i in range(k + 1):
                    rhs = add_vec(rhs, M.left_act(fam.P[i].apply(a),
                                                  f3[k - i].apply(m)))
                if lhs != rhs:
                    vio.append(Violation("(d)", k, (e, f), "f3(am) mismatch"))
        for e in range(B.dim):
            bb = B.basis_vector(e)
            for f in range(M.dim):
                m = M.basis_vector(f)
                lhs = f3[k].apply(M.right_act(m, bb))
                rhs = zero_vector(field, M.dim)
                for i in range(k + 1):
                    rhs = add_vec(rhs, M.right_act(f3[k - i].apply(m),
                                                   fam.Q[i].apply(bb)))
                if lhs != rhs:
                    vio.append(Violation("(d)", k, (e, f), "f3(mb) mismatch"))
        # (e)
        g4 = entries.blocks["g4"]
        for e in range(A.dim):
            a = A.basis_vector(e)
            for f in range(N.dim):
                n = N.basis_vector(f)
                lhs = g4[k].apply(N.right_act(n, a))
                rhs = zero_vector(field, N.dim)
                for i in range(k + 1):
                    rhs = add_vec(rhs, N.right_act(g4[k - i].apply(n),
                                                   fam.Pp[i].apply(a)))
                if lhs != rhs:
                    vio.append(Violation("(e)", k, (e, f), "g4(na) mismatch"))
        for e in range(B.dim):
            bb = B.basis_vector(e)
            for f in range(N.dim):
                n = N.basis_vector(f)
                lhs = g4[k].apply(N.left_act(bb, n))
                rhs = zero_vector(field, N.dim)
                for i in range(k + 1):
                    rhs = add_vec(rhs, N.left_act(fam.Qp[i].apply(bb),
                                                  g4[k - i].apply(n)))
                if lhs != rhs:
                    vio.append(Violation("(e)", k, (e, f), "g4(bn) mismatch"))
        # (f), (g), (h): same word-determined blocks as on the Lie side
        _check_module_blocks(vio, entries, fam.caln, fam.calm, k, gma,
                             ("(f)", "(g)", "(h)"))
        # (i), (j): q1 and p2 are word-determined
        q1, q1_alt, p2, p2_alt = hd_cross_words(
            gma, k, fam.P, fam.Pp, fam.Q, fam.Qp, m_elems, n_elems)
        if q1 != q1_alt:
            diagnostics.append(f"order {k}: the two q1 word expressions differ")
        if p2 != p2_alt:
            diagnostics.append(f"order {k}: the two p2 word expressions differ")
        if entries.block("q1", k) != q1:
            vio.append(Violation("(i)", k, (), "q1 mismatch"))
        if entries.block("p2", k) != p2:
            vio.append(Violation("(j)", k, (), "p2 mismatch"))
        # (k)-(n): pairing conditions
        bblocks = entries.blocks
        for e in range(M.dim):
            m = M.basis_vector(e)
            for f in range(N.dim):
                n = N.basis_vector(f)
                mn = ctx.pair_mn(m, n)
                nm = ctx.pair_nm(n, m)
                rhs_k = zero_vector(field, A.dim)
                rhs_l = zero_vector(field, B.dim)
                rhs_m = zero_vector(field, B.dim)
                rhs_n = zero_vector(field, A.dim)
                for i in range(k + 1):
                    j = k - i
                    p3m = bblocks["p3"][i].apply(m)
                    f3m = bblocks["f3"][i].apply(m)
                    g3m = bblocks["g3"][i].apply(m)
                    q3m = bblocks["q3"][i].apply(m)
                    p4n = bblocks["p4"][j].apply(n)
                    f4n = bblocks["f4"][j].apply(n)
                    g4n = bblocks["g4"][j].apply(n)
                    q4n = bblocks["q4"][j].apply(n)
                    rhs_k = add_vec(rhs_k, add_vec(ctx.A.mul(p3m, p4n),
                                                   ctx.pair_mn(f3m, g4n)))
                    rhs_l = add_vec(rhs_l, add_vec(ctx.pair_nm(g3m, f4n),
                                                   ctx.B.mul(q3m, q4n)))
                    p3m_j = bblocks["p3"][j].apply(m)
                    f3m_j = bblocks["f3"][j].apply(m)
                    g3m_j = bblocks["g3"][j].apply(m)
                    q3m_j = bblocks["q3"][j].apply(m)
                    p4n_i = bblocks["p4"][i].apply(n)
                    f4n_i = bblocks["f4"][i].apply(n)
                    g4n_i = bblocks["g4"][i].apply(n)
                    q4n_i = bblocks["q4"][i].apply(n)
                    rhs_m = add_vec(rhs_m, add_vec(ctx.pair_nm(g4n_i, f3m_j),
                                                   ctx.B.mul(q4n_i, q3m_j)))
                    rhs_n = add_vec(rhs_n, add_vec(ctx.A.mul(p4n_i, p3m_j),
                                                   ctx.pair_mn(f4n_i, g3m_j)))
                if bblocks["p1"][k].apply(mn) != rhs_k:
                    vio.append(Violation("(k)", k, (e, f), "p1(mn) mismatch"))
                if bblocks["q1"][k].apply(mn) != rhs_l:
                    vio.append(Violation("(l)", k, (e, f), "q1(mn) mismatch"))
                if bblocks["q2"][k].apply(nm) != rhs_m:
                    vio.append(Violation("(m)", k, (e, f), "q2(nm) mismatch"))
                if bblocks["p2"][k].apply(nm) != rhs_n:
                    vio.append(Violation("(n)", k, (e, f), "p2(nm) mismatch"))
    return ConditionReport(vio, diagnostics)


def check_tau_form(entries: EntryMaps, order: int, gma: Gma) -> ConditionReport:
    """The two-part characterization of center-valued commutator-vanishing
    sequences, evaluated on a diagonally presented sequence."""
    field = gma.field
    ctx = gma.ctx
    A, B = ctx.A, ctx.B
    vio: list = []
    off_diadded = set()
    for k in range(1, order + 1):
        for name in ("p3", "p4", "q3", "q4", "f1", "f2", "f3", "f4",
                     "g1", "g2", "g3", "g4"):
            if not entries.block(name, k).is_zero():
                if (name, k) not in off_diadded:
                    vio.append(Violation("presentation", k, (name,),
                                         "non-diagonal block is nonzero"))
                    off_diadded.add((name, k))
    if vio:
        return ConditionReport(vio, ["rejected before condition checks"])

    za = algebra_center(A)
    zb = algebra_center(B)
    zg = center_gma(gma).subspace
    for k in range(1, order + 1):
        ell = entries.block("p1", k)
        ppp = entries.block("p2", k)
        qpp = entries.block("q1", k)
        ellp = entries.block("q2", k)
        for e in range(A.dim):
            if not za.contains(ell.column(e)):
                vio.append(Violation("component", k, ("ell", e), "not Z(A)-valued"))
            if not zb.contains(qpp.column(e)):
                vio.append(Violation("component", k, ("Q''", e), "not Z(B)-valued"))
        for e in range(B.dim):
            if not za.contains(ppp.column(e)):
                vio.append(Violation("component", k, ("P''", e), "not Z(A)-valued"))
            if not zb.contains(ellp.column(e)):
                vio.append(Violation("component", k, ("ell'", e), "not Z(B)-valued"))
        for e in range(A.dim):
            for f in range(A.dim):
                comm = A.commutator(A.basis_vector(e), A.basis_vector(f))
                if not is_zero_vector(ell.apply(comm)):
                    vio.append(Violation("component", k, ("ell", e, f),
                                         "does not kill commutators"))
                if not is_zero_vector(qpp.apply(comm)):
                    vio.append(Violation("component", k, ("Q''", e, f),
                                         "does not kill commutators"))
        for e in range(B.dim):
            for f in range(B.dim):
                comm = B.commutator(B.basis_vector(e), B.basis_vector(f))
                if not is_zero_vector(ppp.apply(comm)):
                    vio.append(Violation("component", k, ("P''", e, f),
                                         "does not kill commutators"))
                if not is_zero_vector(ellp.apply(comm)):
                    vio.append(Violation("component", k, ("ell'", e, f),
                                         "does not kill commutators"))
        # (i): central pairings in the big algebra
        for e in range(A.dim):
            g = gma.assemble(ell.column(e), ctx.M.zero(), ctx.N.zero(),
                             qpp.column(e))
            if not zg.contains(g):
                vio.append(Violation("(i)", k, (e,), "ell + Q'' not central"))
        for e in range(B.dim):
            g = gma.assemble(ppp.column(e), ctx.M.zero(), ctx.N.zero(),
                             ellp.column(e))
            if not zg.contains(g):
                vio.append(Violation("(i)", k, (e,), "P'' + ell' not central"))
        # (ii): pairing identities
        for e in range(ctx.M.dim):
            m = ctx.M.basis_vector(e)
            for f in range(ctx.N.dim):
                n = ctx.N.basis_vector(f)
                mn = ctx.pair_mn(m, n)
                nm = ctx.pair_nm(n, m)
                if ell.apply(mn) != ppp.apply(nm):
                    vio.append(Violation("(ii)", k, (e, f), "ell(mn) != P''(nm)"))
                if ellp.apply(nm) != qpp.apply(mn):
                    vio.append(Violation("(ii)", k, (e, f), "ell'(nm) != Q''(mn)"))
    return ConditionReport(vio, [])


# ---------------------------------------------------------------------------
# reconstruction of a multiplicative sequence from its free data
# ---------------------------------------------------------------------------

def hd_determined_entries(gma: Gma, order: int, P: Sequence, Q: Sequence,
                          f3: Sequence, g4: Sequence,
                          m_elems: Sequence, n_elems: Sequence) -> EntryMaps:
    """Populate all sixteen blocks of a multiplicative sequence from
    {P_k, Q_k, f3_k, g4_k, m_k, n_k} via the determined expressions."""
    field = gma.field
    ctx = gma.ctx
    da, db, dm, dn = ctx.A.dim, ctx.B.dim, ctx.M.dim, ctx.N.dim
    m_emb = [gma.embed_m(m) for m in m_elems]
    n_emb = [gma.embed_n(n) for n in n_elems]
    caln, calm = word_sums_all(gma, m_elems, n_elems, order)
    n_words = [gma.embed_n(v) for v in caln]
    m_words = [gma.embed_m(v) for v in calm]
    emb_a, emb_b = gma.embed_a, gma.embed_b

    blocks = {name: [] for name in BLOCK_NAMES}
    ident_a = Matrix.identity(field, da)
    ident_b = Matrix.identity(field, db)
    blocks["p1"].append(ident_a)
    blocks["q2"].append(ident_b)
    blocks["f3"].append(Matrix.identity(field, dm))
    blocks["g4"].append(Matrix.identity(field, dn))
    for name, (rows, cols) in (("p2", (da, db)), ("p3", (da, dm)), ("p4", (da, dn)),
                               ("f1", (dm, da)), ("f2", (dm, db)), ("f4", (dm, dn)),
                               ("g1", (dn, da)), ("g2", (dn, db)), ("g3", (dn, dm)),
                               ("q1", (db, da)), ("q3", (db, dm)), ("q4", (db, dn))):
        blocks[name].append(Matrix.zeros(field, rows, cols))

    Pp = [ident_a]
    Qp = [ident_b]

    def add_vec(u, v):
        return tuple(field.reduce(a + b) for a, b in zip(u, v))

    for k in range(1, order + 1):
        if k == 1:
            low_p = Matrix.zeros(field, da, da)
            low_pp = Matrix.zeros(field, da, da)
            low_q = Matrix.zeros(field, db, db)
            low_qp = Matrix.zeros(field, db, db)
        else:
            def p_words(i, alphas, betas, x):
                return ([emb_a(P[i].apply(x)), m_emb[betas[0]], n_emb[alphas[0]]]
                        + _interleave((m_emb[b], n_emb[a])
                                      for a, b in zip(alphas[1:], betas[1:])))

            def pp_words(i, alphas, betas, x):
                return ([m_emb[betas[0]], n_emb[alphas[0]]]
                        + _interleave((m_emb[b], n_emb[a])
                                      for a, b in zip(alphas[1:], betas[1:]))
                        + [emb_a(Pp[i].apply(x))])

            def q_words(i, alphas, betas, x):
                return (_interleave((n_emb[a], m_emb[b]) for a, b in
                                    zip(reversed(alphas[1:]), reversed(betas[1:])))
                        + [n_emb[alphas[0]], m_emb[betas[0]], emb_b(Q[i].apply(x))])

            def qp_words(i, alphas, betas, x):
                return ([emb_b(Qp[i].apply(x))]
                        + _interleave((n_emb[a], m_emb[b]) for a, b in
                                      zip(reversed(alphas[1:]), reversed(betas[1:])))
                        + [n_emb[alphas[0]], m_emb[betas[0]]])

            low_p = _family_matrix(gma, k, da, gma.part_a, p_words)
            low_pp = _family_matrix(gma, k, da, gma.part_a, pp_words)
            low_q = _family_matrix(gma, k, db, gma.part_b, q_words)
            low_qp = _family_matrix(gma, k, db, gma.part_b, qp_words)

        p1 = P[k].sub(low_p)
        q2 = Q[k].sub(low_q)
        Pp.append(p1.add(low_pp))
        Qp.append(q2.add(low_qp))

        f1_cols, g1_cols = [], []
        for e in range(da):
            a = unit_vector(field, da, e)
            f1 = zero_vector(field, dm)
            g1 = zero_vector(field, dn)
            for i in range(1, k + 1):
                j = k - i
                f1 = add_vec(f1, ctx.M.left_act(P[j].apply(a), m_elems[i]))
                g1 = add_vec(g1, ctx.N.right_act(n_elems[i], Pp[j].apply(a)))
            f1_cols.append(f1)
            g1_cols.append(g1)
        f2_cols, g2_cols = [], []
        for e in range(db):
            bvec = unit_vector(field, db, e)
            f2 = zero_vector(field, dm)
            g2 = zero_vector(field, dn)
            for i in range(1, k + 1):
                j = k - i
                f2 = add_vec(f2, ctx.M.right_act(m_elems[i], Q[j].apply(bvec)))
                g2 = add_vec(g2, ctx.N.left_act(Qp[j].apply(bvec), n_elems[i]))
            f2_cols.append(tuple(field.reduce(-x) for x in f2))
            g2_cols.append(tuple(field.reduce(-x) for x in g2))

        g3_cols, p3_cols, q3_cols = [], [], []
        for e in range(dm):
            m = unit_vector(field, dm, e)
            total = [field.zero] * gma.dim
            for i in range(1, k + 1):
                for j in range(1, k + 1 - i):
                    r = k - i - j
                    w = g_chain(gma, [n_words[i], gma.embed_m(f3[r].apply(m)),
                                      n_words[j]])
                    total = [x + y for x, y in zip(total, w)]
            g3_cols.append(tuple(field.reduce(-x)
                                 for x in gma.part_n(tuple(total))))
            p3 = zero_vector(field, da)
            q3 = zero_vector(field, db)
            for j in range(1, k + 1):
                v = f3[k - j].apply(m)
                p3 = tuple(field.reduce(x - y) for x, y in
                           zip(p3, ctx.pair_mn(v, caln[j])))
                q3 = add_vec(q3, ctx.pair_nm(caln[j], v))
            p3_cols.append(p3)
            q3_cols.append(q3)
        f4_cols, p4_cols, q4_cols = [], [], []
        for e in range(dn):
            n = unit_vector(field, dn, e)
            total = [field.zero] * gma.dim
            for i in range(1, k + 1):
                for j in range(1, k + 1 - i):
                    r = k - i - j
                    w = g_chain(gma, [m_words[i], gma.embed_n(g4[r].apply(n)),
                                      m_words[j]])
                    total = [x + y for x, y in zip(total, w)]
            f4_cols.append(tuple(field.reduce(-x)
                                 for x in gma.part_m(tuple(total))))
            p4 = zero_vector(field, da)
            q4 = zero_vector(field, db)
            for j in range(1, k + 1):
                v = g4[k - j].apply(n)
                p4 = tuple(field.reduce(x - y) for x, y in
                           zip(p4, ctx.pair_mn(calm[j], v)))
                q4 = add_vec(q4, ctx.pair_nm(v, calm[j]))
            p4_cols.append(p4)
            q4_cols.append(q4)

        q1, _, p2, _ = hd_cross_words(gma, k, P, Pp, Q, Qp, m_elems, n_elems)

        blocks["p1"].append(p1)
        blocks["p2"].append(p2)
        blocks["p3"].append(Matrix.from_columns(field, p3_cols)
                            if dm else Matrix.zeros(field, da, 0))
        blocks["p4"].append(Matrix.from_columns(field, p4_cols)
                            if dn else Matrix.zeros(field, da, 0))
        blocks["f1"].append(Matrix.from_columns(field, f1_cols))
        blocks["f2"].append(Matrix.from_columns(field, f2_cols))
        blocks["f3"].append(f3[k])
        blocks["f4"].append(Matrix.from_columns(field, f4_cols)
                            if dn else Matrix.zeros(field, dm, 0))
        blocks["g1"].append(Matrix.from_columns(field, g1_cols))
        blocks["g2"].append(Matrix.from_columns(field, g2_cols))
        blocks["g3"].append(Matrix.from_columns(field, g3_cols)
                            if dm else Matrix.zeros(field, dn, 0))
        blocks["g4"].append(g4[k])
        blocks["q1"].append(q1)
        blocks["q2"].append(q2)
        blocks["q3"].append(Matrix.from_columns(field, q3_cols)
                            if dm else Matrix.zeros(field, db, 0))
        blocks["q4"].append(Matrix.from_columns(field, q4_cols)
                            if dn else Matrix.zeros(field, db, 0))
    return EntryMaps(gma, order, blocks)


# ---------------------------------------------------------------------------
# synthesis of Lie higher derivations
# ---------------------------------------------------------------------------

@dataclass
class LhdIngredients:
    """Free data of the Lie structure theorem.

    P, Q: candidate diagonal families (index 0 = identity), each a Lie
    higher derivation on its algebra; Qpp: A -> Z(B) and Ppp: B -> Z(A)
    commutator-vanishing families (index 0 = zero); f3, g4: module map
    families satisfying the action-compatibility conditions (index 0 =
    identity); m_elems, n_elems: distinguished module elements (index 0 =
    zero).
    """
    P: list
    Q: list
    Qpp: list
    Ppp: list
    f3: list
    g4: list
    m_elems: list
    n_elems: list


def zero_ingredients(gma: Gma, order: int) -> LhdIngredients:
    field = gma.field
    ctx = gma.ctx
    return LhdIngredients(
        P=[Matrix.identity(field, ctx.A.dim)]
          + [Matrix.zeros(field, ctx.A.dim, ctx.A.dim)] * order,
        Q=[Matrix.identity(field, ctx.B.dim)]
          + [Matrix.zeros(field, ctx.B.dim, ctx.B.dim)] * order,
        Qpp=[Matrix.zeros(field, ctx.B.dim, ctx.A.dim)] * (order + 1),
        Ppp=[Matrix.zeros(field, ctx.A.dim, ctx.B.dim)] * (order + 1),
        f3=[Matrix.identity(field, ctx.M.dim)]
           + [Matrix.zeros(field, ctx.M.dim, ctx.M.dim)] * order,
        g4=[Matrix.identity(field, ctx.N.dim)]
           + [Matrix.zeros(field, ctx.N.dim, ctx.N.dim)] * order,
        m_elems=[zero_vector(field, ctx.M.dim)] * (order + 1),
        n_elems=[zero_vector(field, ctx.N.dim)] * (order + 1),
    )


def synthesize_lhd(gma: Gma, order: int, ing: LhdIngredients) -> MapSequence:
    """Assemble a sequence from ingredients along the determined conditions,
    then self-check the Lie identity; inconsistent ingredients raise."""
    field = gma.field
    ctx = gma.ctx
    da, db, dm, dn = ctx.A.dim, ctx.B.dim, ctx.M.dim, ctx.N.dim
    m_emb = [gma.embed_m(m) for m in ing.m_elems]
    n_emb = [gma.embed_n(n) for n in ing.n_elems]
    caln, calm = word_sums_all(gma, ing.m_elems, ing.n_elems, order)
    n_words = [gma.embed_n(v) for v in caln]
    m_words = [gma.embed_m(v) for v in calm]
    emb_a, emb_b = gma.embed_a, gma.embed_b
    mul = gma.mul

    blocks = {name: [] for name in BLOCK_NAMES}
    blocks["p1"].append(Matrix.identity(field, da))
    blocks["q2"].append(Matrix.identity(field, db))
    blocks["f3"].append(Matrix.identity(field, dm))
    blocks["g4"].append(Matrix.identity(field, dn))
    for name, (rows, cols) in (("p2", (da, db)), ("p3", (da, dm)), ("p4", (da, dn)),
                               ("f1", (dm, da)), ("f2", (dm, db)), ("f4", (dm, dn)),
                               ("g1", (dn, da)), ("g2", (dn, db)), ("g3", (dn, dm)),
                               ("q1", (db, da)), ("q3", (db, dm)), ("q4", (db, dn))):
        blocks[name].append(Matrix.zeros(field, rows, cols))

    P, Q, Qpp, Ppp = ing.P, ing.Q, ing.Qpp, ing.Ppp
    Pp = [Matrix.identity(field, da)]
    Qp = [Matrix.identity(field, db)]

    def add_vec(u, v):
        return tuple(field.reduce(a + b) for a, b in zip(u, v))

    for k in range(1, order + 1):
        if k == 1:
            low_p = Matrix.zeros(field, da, da)
            low_pp = Matrix.zeros(field, da, da)
            low_ppp = Matrix.zeros(field, da, db)
            low_q = Matrix.zeros(field, db, db)
            low_qp = Matrix.zeros(field, db, db)
            low_qpp = Matrix.zeros(field, db, da)
        else:
            def p_words(i, alphas, betas, x):
                head = _sub_vec(field,
                                mul(emb_a(P[i].apply(x)), m_emb[betas[0]]),
                                mul(m_emb[betas[0]], emb_b(Qpp[i].apply(x))))
                return [head, n_emb[alphas[0]]] + _interleave(
                    (m_emb[b], n_emb[a]) for a, b in zip(alphas[1:], betas[1:]))

            def pp_words(i, alphas, betas, x):
                tail = _sub_vec(field,
                                mul(n_emb[alphas[0]], emb_a(Pp[i].apply(x))),
                                mul(emb_b(Qpp[i].apply(x)), n_emb[alphas[0]]))
                pre = _interleave((m_emb[b], n_emb[a]) for a, b in
                                  zip(reversed(alphas[1:]), reversed(betas[1:])))
                return pre + [m_emb[betas[0]], tail]

            def ppp_words(i, alphas, betas, x):
                head = _sub_vec(field,
                                mul(m_emb[betas[0]], emb_b(Q[i].apply(x))),
                                mul(emb_a(Ppp[i].apply(x)), m_emb[betas[0]]))
                return [head, n_emb[alphas[0]]] + _interleave(
                    (m_emb[b], n_emb[a]) for a, b in zip(alphas[1:], betas[1:]))

            def q_words(i, alphas, betas, x):
                head = _sub_vec(field,
                                mul(m_emb[betas[0]], emb_b(Q[i].apply(x))),
                                mul(emb_a(Ppp[i].apply(x)), m_emb[betas[0]]))
                pre = _interleave((n_emb[a], m_emb[b]) for a, b in
                                  zip(reversed(alphas[1:]), reversed(betas[1:])))
                return pre + [n_emb[alphas[0]], head]

            def qp_words(i, alphas, betas, x):
                head = _sub_vec(field,
                                mul(emb_b(Qp[i].apply(x)), n_emb[alphas[0]]),
                                mul(n_emb[alphas[0]], emb_a(Ppp[i].apply(x))))
                return [head, m_emb[betas[0]]] + _interleave(
                    (n_emb[a], m_emb[b]) for a, b in zip(alphas[1:], betas[1:]))

            def qpp_words(i, alphas, betas, x):
                head = _sub_vec(field,
                                mul(emb_a(P[i].apply(x)), m_emb[betas[0]]),
                                mul(m_emb[betas[0]], emb_b(Qpp[i].apply(x))))
                pre = _interleave((n_emb[a], m_emb[b]) for a, b in
                                  zip(reversed(alphas[1:]), reversed(betas[1:])))
                return pre + [n_emb[alphas[0]], head]

            low_p = _family_matrix(gma, k, da, gma.part_a, p_words)
            low_pp = _family_matrix(gma, k, da, gma.part_a, pp_words)
            low_ppp = _family_matrix(gma, k, db, gma.part_a, ppp_words)
            low_q = _family_matrix(gma, k, db, gma.part_b, q_words)
            low_qp = _family_matrix(gma, k, db, gma.part_b, qp_words)
            low_qpp = _family_matrix(gma, k, da, gma.part_b, qpp_words)

        p1 = P[k].sub(low_p)
        q2 = Q[k].sub(low_q)
        Pp.append(p1.add(low_pp))
        Qp.append(q2.add(low_qp))
        p2 = Ppp[k].add(low_ppp)
        q1 = Qpp[k].add(low_qpp)

        f1_cols, g1_cols = [], []
        for e in range(da):
            a = unit_vector(field, da, e)
            f1 = zero_vector(field, dm)
            g1 = zero_vector(field, dn)
            for i in range(1, k + 1):
                j = k - i
                f1 = add_vec(f1, _sub_vec(field,
                                          ctx.M.left_act(P[j].apply(a), ing.m_elems[i]),
                                          ctx.M.right_act(ing.m_elems[i], Qpp[j].apply(a))))
                g1 = add_vec(g1, _sub_vec(field,
                                          ctx.N.right_act(ing.n_elems[i], Pp[j].apply(a)),
                                          ctx.N.left_act(Qpp[j].apply(a), ing.n_elems[i])))
            f1_cols.append(f1)
            g1_cols.append(g1)
        f2_cols, g2_cols = [], []
        for e in range(db):
            bvec = unit_vector(field, db, e)
            f2 = zero_vector(field, dm)
            g2 = zero_vector(field, dn)
            for i in range(1, k + 1):
                j = k - i
                f2 = add_vec(f2, _sub_vec(field,
                                          ctx.M.right_act(ing.m_elems[i], Q[j].apply(bvec)),
                                          ctx.M.left_act(Ppp[j].apply(bvec), ing.m_elems[i])))
                g2 = add_vec(g2, _sub_vec(field,
                                          ctx.N.left_act(Qp[j].apply(bvec), ing.n_elems[i]),
                                          ctx.N.right_act(ing.n_elems[i], Ppp[j].apply(bvec))))
            f2_cols.append(tuple(field.reduce(-x) for x in f2))
            g2_cols.append(tuple(field.reduce(-x) for x in g2))

        g3_cols, p3_cols, q3_cols = [], [], []
        for e in range(dm):
            m = unit_vector(field, dm, e)
            total = [field.zero] * gma.dim
            for i in range(1, k + 1):
                for j in range(1, k + 1 - i):
                    r = k - i - j
                    w = g_chain(gma, [n_words[i], gma.embed_m(ing.f3[r].apply(m)),
                                      n_words[j]])
                    total = [x + y for x, y in zip(total, w)]
            g3_cols.append(tuple(field.reduce(-x) for x in gma.part_n(tuple(total))))
            p3 = zero_vector(field, da)
            q3 = zero_vector(field, db)
            for j in range(1, k + 1):
                v = ing.f3[k - j].apply(m)
                p3 = tuple(field.reduce(x - y) for x, y in
                           zip(p3, ctx.pair_mn(v, caln[j])))
                q3 = add_vec(q3, ctx.pair_nm(caln[j], v))
            p3_cols.append(p3)
            q3_cols.append(q3)
        f4_cols, p4_cols, q4_cols = [], [], []
        for e in range(dn):
            n = unit_vector(field, dn, e)
            total = [field.zero] * gma.dim
            for i in range(1, k + 1):
                for j in range(1, k + 1 - i):
                    r = k - i - j
                    w = g_chain(gma, [m_words[i], gma.embed_n(ing.g4[r].apply(n)),
                                      m_words[j]])
                    total = [x + y for x, y in zip(total, w)]
            f4_cols.append(tuple(field.reduce(-x) for x in gma.part_m(tuple(total))))
            p4 = zero_vector(field, da)
            q4 = zero_vector(field, db)
            for j in range(1, k + 1):
                v = ing.g4[k - j].apply(n)
                p4 = tuple(field.reduce(x - y) for x, y in
                           zip(p4, ctx.pair_mn(calm[j], v)))
                q4 = add_vec(q4, ctx.pair_nm(v, calm[j]))
            p4_cols.append(p4)
            q4_cols.append(q4)

        blocks["p1"].append(p1)
        blocks["p2"].append(p2)
        blocks["p3"].append(Matrix.from_columns(field, p3_cols)
                            if dm else Matrix.zeros(field, da, 0))
        blocks["p4"].append(Matrix.from_columns(field, p4_cols)
                            if dn else Matrix.zeros(field, da, 0))
        blocks["f1"].append(Matrix.from_columns(field, f1_cols))
        blocks["f2"].append(Matrix.from_columns(field, f2_cols))
        blocks["f3"].append(ing.f3[k])
        blocks["f4"].append(Matrix.from_columns(field, f4_cols)
                            if dn else Matrix.zeros(field, dm, 0))
        blocks["g1"].append(Matrix.from_columns(field, g1_cols))
        blocks["g2"].append(Matrix.from_columns(field, g2_cols))
        blocks["g3"].append(Matrix.from_columns(field, g3_cols)
                            if dm else Matrix.zeros(field, dn, 0))
        blocks["g4"].append(ing.g4[k])
        blocks["q1"].append(q1)
        blocks["q2"].append(q2)
        blocks["q3"].append(Matrix.from_columns(field, q3_cols)
                            if dm else Matrix.zeros(field, db, 0))
        blocks["q4"].append(Matrix.from_columns(field, q4_cols)
                            if dn else Matrix.zeros(field, db, 0))

    entries = EntryMaps(gma, order, blocks)
    vio: list = []
    for k in range(1, order + 1):
        _check_pairing_conditions(vio, entries, k, gma, ("(11)", "(12)"))
    if vio:
        raise IngredientError(vio[0].condition, vio[0])
    seq = reconstruct(entries)
    res = verify_lhd(seq, order)
    if not res.ok:
        raise IngredientError("self-check", res.witness)
    return seq
