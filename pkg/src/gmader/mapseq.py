"""Truncated sequences of linear endomaps of a generalized matrix algebra.

A MapSequence carries L_0..L_K as dense matrices in the block basis, with
L_0 = id (a tau-style sequence suppresses that invariant and stores a zero
L_0).  Verification of the higher-derivation and Lie-higher-derivation
identities quantifies over basis pairs only, which suffices because both
identities are bilinear; witnesses report the first failure in canonical
order (k ascending, then basis indices lexicographic).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Optional, Sequence

from .linalg import Matrix, is_zero_vector
from .gma import Gma, center_gma


class MapSequenceError(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: Optional[dict] = None

    def __bool__(self):
        return self.ok


class MapSequence:
    """L_0..L_K on one Gma; immutable."""

    __slots__ = ("gma", "order", "mats", "is_tau")

    def __init__(self, gma: Gma, mats: Sequence[Matrix], is_tau: bool = False):
        self.gma = gma
        self.mats = tuple(mats)
        self.order = len(self.mats) - 1
        self.is_tau = is_tau
        if self.order < 0:
            raise MapSequenceError("empty sequence")
        for m in self.mats:
            if m.rows != gma.dim or m.cols != gma.dim:
                raise MapSequenceError("map dimensions do not match the gma")
        head = self.mats[0]
        if is_tau:
            if not head.is_zero():
                raise MapSequenceError("tau sequence must not carry an order-0 map")
        elif head != Matrix.identity(gma.field, gma.dim):
            raise MapSequenceError("L_0 must be the identity")

    def apply(self, k: int, v: Sequence) -> tuple:
        return self.mats[k].apply(v)

    def __eq__(self, other):
        return (isinstance(other, MapSequence) and self.gma is other.gma
                and self.is_tau == other.is_tau and self.mats == other.mats)

    def __repr__(self):
        kind = "tau" if self.is_tau else "seq"
        return f"MapSequence({kind}, order {self.order}, dim {self.gma.dim})"


def identity_sequence(gma: Gma, order: int) -> MapSequence:
    ident = Matrix.identity(gma.field, gma.dim)
    zero = Matrix.zeros(gma.field, gma.dim, gma.dim)
    return MapSequence(gma, [ident] + [zero] * order)


def zero_sequence(gma: Gma, order: int) -> MapSequence:
    return identity_sequence(gma, order)


def zero_tau(gma: Gma, order: int) -> MapSequence:
    zero = Matrix.zeros(gma.field, gma.dim, gma.dim)
    return MapSequence(gma, [zero] * (order + 1), is_tau=True)


# ---------------------------------------------------------------------------
# entry maps (the sixteen blocks of each L_k, plus the distinguished elements)
# ---------------------------------------------------------------------------

BLOCK_NAMES = ("p1", "p2", "p3", "p4", "f1", "f2", "f3", "f4",
               "g1", "g2", "g3", "g4", "q1", "q2", "q3", "q4")

# block name -> (output range attr, input range attr)
_BLOCK_SHAPE = {
    "p1": ("a_range", "a_range"), "p2": ("a_range", "b_range"),
    "p3": ("a_range", "m_range"), "p4": ("a_range", "n_range"),
    "f1": ("m_range", "a_range"), "f2": ("m_range", "b_range"),
    "f3": ("m_range", "m_range"), "f4": ("m_range", "n_range"),
    "g1": ("n_range", "a_range"), "g2": ("n_range", "b_range"),
    "g3": ("n_range", "m_range"), "g4": ("n_range", "n_range"),
    "q1": ("b_range", "a_range"), "q2": ("b_range", "b_range"),
    "q3": ("b_range", "m_range"), "q4": ("b_range", "n_range"),
}


class EntryMaps:
    """Per order k = 0..K, the sixteen block maps of the presentation,
    together with m_k = f1_k(1_A) and n_k = g1_k(1_A)."""

    __slots__ = ("gma", "order", "is_tau", "blocks", "m_elems", "n_elems")

    def __init__(self, gma: Gma, order: int, blocks: dict, is_tau: bool = False):
        self.gma = gma
        self.order = order
        self.is_tau = is_tau
        self.blocks = {name: tuple(mats) for name, mats in blocks.items()}
        for name in BLOCK_NAMES:
            if name not in self.blocks or len(self.blocks[name]) != order + 1:
                raise MapSequenceError(f"missing or short block family {name}")
        unit_a = gma.ctx.A.unit
        self.m_elems = tuple(self.blocks["f1"][k].apply(unit_a)
                             for k in range(order + 1))
        self.n_elems = tuple(self.blocks["g1"][k].apply(unit_a)
                             for k in range(order + 1))

    def block(self, name: str, k: int) -> Matrix:
        return self.blocks[name][k]


def extract_entries(seq: MapSequence) -> EntryMaps:
    """Split each L_k into its sixteen blocks."""
    gma = seq.gma
    blocks = {name: [] for name in BLOCK_NAMES}
    for k in range(seq.order + 1):
        mat = seq.mats[k]
        for name, (out_attr, in_attr) in _BLOCK_SHAPE.items():
            out_range = getattr(gma, out_attr)
            in_range = getattr(gma, in_attr)
            blocks[name].append(mat.submatrix(out_range, in_range))
    return EntryMaps(gma, seq.order, blocks, is_tau=seq.is_tau)


def reconstruct(entries: EntryMaps) -> MapSequence:
    """Assemble L_k from the sixteen blocks; exact inverse of extract_entries."""
    gma = entries.gma
    field = gma.field
    mats = []
    for k in range(entries.order + 1):
        from .linalg import block_matrix
        b = entries.blocks
        mat = block_matrix(field, [
            [b["p1"][k], b["p3"][k], b["p4"][k], b["p2"][k]],
            [b["f1"][k], b["f3"][k], b["f4"][k], b["f2"][k]],
            [b["g1"][k], b["g3"][k], b["g4"][k], b["g2"][k]],
            [b["q1"][k], b["q3"][k], b["q4"][k], b["q2"][k]],
        ])
        mats.append(mat)
    return MapSequence(gma, mats, is_tau=entries.is_tau)


# ---------------------------------------------------------------------------
# identity verification
# ---------------------------------------------------------------------------

def _resolve_order(seq: MapSequence, order: Optional[int]) -> int:
    if order is None:
        return seq.order
    if order > seq.order:
        raise MapSequenceError(f"order {order} exceeds sequence order {seq.order}")
    return order


def verify_hd(seq: MapSequence, order: Optional[int] = None) -> CheckResult:
    """D_k(xy) = sum_{i+j=k} D_i(x) D_j(y) on all basis pairs, k <= order."""
    order = _resolve_order(seq, order)
    gma = seq.gma
    field = gma.field
    dim = gma.dim
    cols = [[seq.mats[k].column(e) for e in range(dim)] for k in range(order + 1)]
    for k in range(1, order + 1):
        for e in range(dim):
            for f in range(dim):
                prod = gma.algebra.tensor[e][f]
                lhs = seq.mats[k].apply(prod)
                rhs = [field.zero] * dim
                for i in range(k + 1):
                    term = gma.mul(cols[i][e], cols[k - i][f])
                    rhs = [a + b for a, b in zip(rhs, term)]
                rhs = tuple(field.reduce(x) for x in rhs)
                if lhs != rhs:
                    return CheckResult(False, {
                        "identity": "hd", "k": k, "pair": (e, f),
                        "lhs": lhs, "rhs": rhs})
    return CheckResult(True)


def verify_lhd(seq: MapSequence, order: Optional[int] = None) -> CheckResult:
    """L_k([x,y]) = sum_{i+j=k} [L_i(x), L_j(y)] on all basis pairs."""
    order = _resolve_order(seq, order)
    gma = seq.gma
    field = gma.field
    dim = gma.dim
    cols = [[seq.mats[k].column(e) for e in range(dim)] for k in range(order + 1)]
    comms = [[gma.commutator(gma.basis_vector(e), gma.basis_vector(f))
              for f in range(dim)] for e in range(dim)]
    for k in range(1, order + 1):
        for e in range(dim):
            for f in range(dim):
                comm = comms[e][f]
                lhs = seq.mats[k].apply(comm)
                rhs = [field.zero] * dim
                for i in range(k + 1):
                    u, v = cols[i][e], cols[k - i][f]
                    uv = gma.mul(u, v)
                    vu = gma.mul(v, u)
                    rhs = [a + b - c for a, b, c in zip(rhs, uv, vu)]
                rhs = tuple(field.reduce(x) for x in rhs)
                if lhs != rhs:
                    return CheckResult(False, {
                        "identity": "lhd", "k": k, "pair": (e, f),
                        "lhs": lhs, "rhs": rhs})
    return CheckResult(True)


def is_center_valued_vanishing(tau: MapSequence, order: Optional[int] = None) -> CheckResult:
    """tau_k(G) inside Z(G) and tau_k([x,y]) = 0, on basis elements/pairs."""
    if not tau.is_tau:
        raise MapSequenceError("expected a tau-style sequence")
    order = _resolve_order(tau, order)
    gma = tau.gma
    zg = center_gma(gma).subspace
    for k in range(1, order + 1):
        for e in range(gma.dim):
            img = tau.mats[k].column(e)
            if not zg.contains(img):
                return CheckResult(False, {
                    "identity": "tau-central", "k": k, "basis": e, "value": img})
        for e in range(gma.dim):
            for f in range(gma.dim):
                comm = gma.commutator(gma.basis_vector(e), gma.basis_vector(f))
                img = tau.mats[k].apply(comm)
                if not is_zero_vector(img):
                    return CheckResult(False, {
                        "identity": "tau-commutator", "k": k, "pair": (e, f),
                        "value": img})
    return CheckResult(True)


# ---------------------------------------------------------------------------
# generators and sequence arithmetic
# ---------------------------------------------------------------------------

def inner_derivation(gma: Gma, x: Sequence) -> Matrix:
    """The map y -> [x, y]."""
    lx = gma.algebra.left_mul_matrix(x)
    rx = gma.algebra.right_mul_matrix(x)
    return lx.sub(rx)


def ordinary_sequence(gma: Gma, d: Matrix, order: int) -> MapSequence:
    """The sequence d^k / k!; requires characteristic 0 or p > order."""
    field = gma.field
    if 0 < field.char <= order:
        raise MapSequenceError(
            f"{order}! is not invertible in characteristic {field.char}")
    mats = [Matrix.identity(field, gma.dim)]
    power = Matrix.identity(field, gma.dim)
    for k in range(1, order + 1):
        power = d.matmul(power)
        inv_fact = field.inv(field.reduce(field.one * factorial(k)))
        mats.append(power.scale(inv_fact))
    return MapSequence(gma, mats)


def ordinary_from_derivation(gma: Gma, d: Matrix, order: int) -> MapSequence:
    """Ordinary higher derivation of a derivation; rejects non-derivations."""
    probe = MapSequence(gma, [Matrix.identity(gma.field, gma.dim), d])
    res = verify_hd(probe, 1)
    if not res.ok:
        raise MapSequenceError(f"not a derivation: {res.witness}")
    return ordinary_sequence(gma, d, order)


def seq_sum(a: MapSequence, b: MapSequence) -> MapSequence:
    """Pointwise sum per order; the order-0 map stays the identity whenever
    either summand carries one."""
    if a.gma is not b.gma or a.order != b.order:
        raise MapSequenceError("sequence mismatch")
    mats = [a.mats[k].add(b.mats[k]) for k in range(1, a.order + 1)]
    if a.is_tau and b.is_tau:
        zero = Matrix.zeros(a.gma.field, a.gma.dim, a.gma.dim)
        return MapSequence(a.gma, [zero] + mats, is_tau=True)
    ident = Matrix.identity(a.gma.field, a.gma.dim)
    return MapSequence(a.gma, [ident] + mats)


def seq_scale(seq: MapSequence, c) -> MapSequence:
    """Scale every positive order by c (order 0 untouched)."""
    mats = [seq.mats[0]] + [seq.mats[k].scale(c) for k in range(1, seq.order + 1)]
    return MapSequence(seq.gma, mats, is_tau=seq.is_tau)


def seq_grade(seq: MapSequence, c) -> MapSequence:
    """L_k -> c^k L_k; preserves the (Lie) higher-derivation identities."""
    field = seq.gma.field
    mats = [seq.mats[0]]
    power = field.one
    for k in range(1, seq.order + 1):
        power = field.reduce(power * c)
        mats.append(seq.mats[k].scale(power))
    return MapSequence(seq.gma, mats, is_tau=seq.is_tau)


def seq_truncate(seq: MapSequence, order: int) -> MapSequence:
    order = _resolve_order(seq, order)
    return MapSequence(seq.gma, seq.mats[:order + 1], is_tau=seq.is_tau)
