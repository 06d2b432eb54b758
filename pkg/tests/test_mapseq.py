"""Map sequences: extraction, identity verification, generators, arithmetic."""

import random
from fractions import Fraction

import pytest

from gmader.gma import benkovic, benkovic_improper_map, full_matrix
from gmader.linalg import Matrix, PrimeField, QQ, unit_vector
from gmader.mapseq import (
    MapSequence, MapSequenceError, extract_entries, identity_sequence,
    inner_derivation, is_center_valued_vanishing, ordinary_from_derivation,
    ordinary_sequence, reconstruct, seq_grade, seq_scale, seq_sum,
    seq_truncate, verify_hd, verify_lhd, zero_sequence, zero_tau,
)
from gmader.sampling import (
    catalog_gmas, random_inner_hd, random_mapseq, random_tau,
)


def test_order_zero_map_must_be_identity():
    g = full_matrix(QQ, 2)
    with pytest.raises(MapSequenceError):
        MapSequence(g, [Matrix.zeros(QQ, g.dim, g.dim)])


def test_extract_zero_sequence():
    g = full_matrix(QQ, 2)
    seq = zero_sequence(g, 2)
    en = extract_entries(seq)
    for name in ("p2", "p3", "p4", "f1", "f2", "f4", "g1", "g2", "g3",
                 "q1", "q3", "q4"):
        for k in range(3):
            assert en.block(name, k).is_zero()
    for k in (1, 2):
        assert en.block("p1", k).is_zero()
        assert en.block("f3", k).is_zero()
    assert all(x == 0 for x in en.m_elems[1])
    assert all(x == 0 for x in en.n_elems[1])


def test_extract_entries_of_off_diagonal_inner_derivation():
    g = full_matrix(QQ, 2)
    x = [QQ.zero] * g.dim
    x[g.m_range[0]] = Fraction(2)
    x[g.n_range[0]] = Fraction(3)
    d = inner_derivation(g, tuple(x))
    seq = MapSequence(g, [Matrix.identity(QQ, g.dim), d])
    en = extract_entries(seq)
    assert not en.block("f1", 1).is_zero()
    assert not en.block("g2", 1).is_zero()
    # diagonal input blocks only touch the off-diagonal outputs
    assert en.block("p1", 1).is_zero()
    assert en.block("q2", 1).is_zero()
    # m_1 = f1_1(1) and n_1 = g1_1(1) by construction
    assert en.m_elems[1] == en.block("f1", 1).apply(g.ctx.A.unit)
    assert en.n_elems[1] == en.block("g1", 1).apply(g.ctx.A.unit)


def test_extract_reconstruct_round_trip_on_random_sequences():
    rng = random.Random(13)
    g = full_matrix(PrimeField(101), 2)
    for _ in range(100):
        seq = random_mapseq(g, rng.randint(1, 3), rng)
        assert reconstruct(extract_entries(seq)) == seq
    gq = benkovic(QQ)
    for _ in range(5):
        seq = random_mapseq(gq, 2, rng)
        assert reconstruct(extract_entries(seq)) == seq


def test_verify_hd_zero_and_identity_perturbation():
    g = full_matrix(QQ, 2)
    assert verify_hd(zero_sequence(g, 3)).ok
    bad = MapSequence(g, [Matrix.identity(QQ, g.dim), Matrix.identity(QQ, g.dim)])
    res = verify_hd(bad)
    assert not res.ok
    assert res.witness["k"] == 1


def test_ordinary_from_inner_derivation_passes_hd():
    rng = random.Random(17)
    g = full_matrix(QQ, 2)
    seq = random_inner_hd(g, 4, rng)
    assert verify_hd(seq).ok
    assert verify_lhd(seq).ok  # higher derivations are Lie higher derivations


def test_ordinary_from_derivation_rejects_non_derivations():
    g = full_matrix(QQ, 2)
    with pytest.raises(MapSequenceError):
        ordinary_from_derivation(g, Matrix.identity(QQ, g.dim), 2)


def test_ordinary_of_zero_derivation_is_the_zero_sequence():
    g = full_matrix(QQ, 2)
    seq = ordinary_from_derivation(g, Matrix.zeros(QQ, g.dim, g.dim), 3)
    assert seq == zero_sequence(g, 3)


def test_ordinary_sequence_characteristic_guard():
    g = full_matrix(PrimeField(5), 2)
    x = [PrimeField(5).zero] * g.dim
    x[g.m_range[0]] = PrimeField(5).one
    d = inner_derivation(g, tuple(x))
    with pytest.raises(MapSequenceError):
        ordinary_sequence(g, d, 5)
    assert verify_hd(ordinary_sequence(g, d, 4)).ok


def test_verify_hd_at_order_one_agrees_with_the_leibniz_rule():
    rng = random.Random(3)
    g = full_matrix(PrimeField(101), 3)
    for _ in range(5):
        seq = random_mapseq(g, 1, rng)
        d = seq.mats[1]
        leibniz = True
        for e in range(g.dim):
            for f in range(g.dim):
                x, y = g.basis_vector(e), g.basis_vector(f)
                lhs = d.apply(g.mul(x, y))
                rhs = tuple(g.field.reduce(a + b) for a, b in
                            zip(g.mul(d.apply(x), y), g.mul(x, d.apply(y))))
                leibniz &= lhs == rhs
        assert verify_hd(seq, 1).ok == leibniz
    x = [QQ.zero] * full_matrix(QQ, 2).dim
    g2 = full_matrix(QQ, 2)
    x = [QQ.zero] * g2.dim
    x[g2.m_range[0]] = Fraction(1)
    seq = MapSequence(g2, [Matrix.identity(QQ, g2.dim),
                           inner_derivation(g2, tuple(x))])
    assert verify_hd(seq, 1).ok


def test_benkovic_map_is_lie_but_not_multiplicative():
    g = benkovic(QQ)
    L = benkovic_improper_map(g)
    seq = MapSequence(g, [Matrix.identity(QQ, g.dim), L])
    assert verify_lhd(seq).ok
    assert not verify_hd(seq).ok


def test_perturbed_swap_fails_lie_identity():
    g = full_matrix(QQ, 2)
    rng = random.Random(23)
    seq = random_inner_hd(g, 2, rng)
    mats = list(seq.mats)
    # swap the two off-diagonal module blocks of L_1: breaks the bracket rule
    perm = list(range(g.dim))
    perm[g.m_range[0]], perm[g.n_range[0]] = perm[g.n_range[0]], perm[g.m_range[0]]
    swap = Matrix.from_columns(QQ, [unit_vector(QQ, g.dim, perm[j])
                                    for j in range(g.dim)])
    mats[1] = mats[1].add(swap).sub(Matrix.identity(QQ, g.dim))
    res = verify_lhd(MapSequence(g, mats))
    assert not res.ok and res.witness["identity"] == "lhd"


def test_center_valued_vanishing():
    g = full_matrix(QQ, 2)
    assert is_center_valued_vanishing(zero_tau(g, 2)).ok
    rng = random.Random(29)
    tau = random_tau(g, 2, rng)
    assert is_center_valued_vanishing(tau).ok
    # the identity map is not center-valued on a noncommutative algebra
    ident_tau = MapSequence(
        g, [Matrix.zeros(QQ, g.dim, g.dim), Matrix.identity(QQ, g.dim)],
        is_tau=True)
    res = is_center_valued_vanishing(ident_tau)
    assert not res.ok


def test_inner_derivation_of_central_elements_is_zero():
    g = full_matrix(QQ, 2)
    assert inner_derivation(g, g.unit()).is_zero()
    z = tuple(Fraction(4) * x for x in g.unit())
    assert inner_derivation(g, z).is_zero()
    x = [QQ.zero] * g.dim
    x[g.m_range[0]] = Fraction(1)
    d = inner_derivation(g, tuple(x))
    assert not d.is_zero()
    assert verify_hd(MapSequence(g, [Matrix.identity(QQ, g.dim), d])).ok


def test_sequence_arithmetic():
    g = full_matrix(QQ, 2)
    rng = random.Random(31)
    seq = random_inner_hd(g, 2, rng)
    zero = zero_sequence(g, 2)
    assert seq_sum(zero, seq) == seq
    tau = zero_tau(g, 2)
    assert seq_sum(seq, tau) == seq
    assert seq_scale(seq, QQ.one) == seq
    lam = Fraction(3)
    graded = seq_grade(seq, lam)
    assert graded.mats[1] == seq.mats[1].scale(lam)
    assert graded.mats[2] == seq.mats[2].scale(lam * lam)
    assert verify_hd(graded).ok  # grading preserves the identities
    assert seq_truncate(seq, 1).order == 1


def test_sum_of_lhd_and_tau_is_lhd():
    rng = random.Random(37)
    for g in catalog_gmas(PrimeField(7))[:3]:
        seq = random_inner_hd(g, 2, rng)
        tau = random_tau(g, 2, rng)
        total = seq_sum(seq, tau)
        assert verify_lhd(total).ok
