"""The properness decision, certificates, witnesses and sufficiency."""

import random

import pytest

from gmader.gma import (
    benkovic, benkovic_improper_map, faithfulness, full_matrix,
)
from gmader.linalg import Matrix, PrimeField, QQ
from gmader.mapseq import (
    MapSequence, extract_entries, ordinary_sequence, seq_sum, verify_lhd,
    zero_sequence, zero_tau,
)
from gmader.properness import (
    PropernessError, check_a_prime, check_b_prime, check_sufficient,
    decide_proper, eq34_crosscheck, improper_witness_holds, verify_certificate,
)
from gmader.sampling import (
    benkovic_dead_end, benkovic_dead_end_map, benkovic_improper_variants,
    catalog_gmas, random_inner_hd, random_proper_lhd, random_tau,
)
from gmader.structure import lhd_families


def _families(seq, order):
    return lhd_families(extract_entries(seq), order, seq.gma)


def test_zero_sequence_passes_both_prime_checks():
    g = full_matrix(QQ, 2)
    fam = _families(zero_sequence(g, 3), 3)
    assert check_a_prime(fam, 3, g).ok
    assert check_b_prime(fam, 3, g).ok


def test_ordinary_hd_has_vanishing_cross_families():
    rng = random.Random(3)
    g = full_matrix(PrimeField(7), 3)
    seq = random_inner_hd(g, 3, rng)
    fam = _families(seq, 3)
    for k in range(1, 4):
        assert fam.Qpp[k].is_zero()
        assert fam.Ppp[k].is_zero()
    assert check_a_prime(fam, 3, g).ok
    assert check_b_prime(fam, 3, g).ok


def test_benkovic_fails_a_prime_with_reusable_witness():
    g = benkovic(QQ)
    seq = MapSequence(g, [Matrix.identity(QQ, g.dim), benkovic_improper_map(g)])
    fam = _families(seq, 1)
    res = check_a_prime(fam, 1, g)
    assert not res.ok
    assert improper_witness_holds(fam, g, res.witness)


def test_decide_zero_sequence_is_proper_with_zero_certificate():
    g = full_matrix(QQ, 2)
    verdict = decide_proper(zero_sequence(g, 3))
    assert verdict.status == "PROPER"
    cert = verdict.certificate
    assert cert.d == zero_sequence(g, 3)
    assert all(m.is_zero() for m in cert.tau.mats)


def test_decide_ordinary_hd_is_proper_with_zero_tau():
    rng = random.Random(5)
    g = full_matrix(PrimeField(7), 2)
    seq = random_inner_hd(g, 3, rng)
    verdict = decide_proper(seq)
    assert verdict.status == "PROPER"
    assert all(m.is_zero() for m in verdict.certificate.tau.mats)


def test_decide_requires_an_lhd():
    g = full_matrix(QQ, 2)
    bad = MapSequence(g, [Matrix.identity(QQ, g.dim), Matrix.identity(QQ, g.dim)])
    with pytest.raises(PropernessError):
        decide_proper(bad)


def test_benkovic_base_map_is_improper():
    g = benkovic(QQ)
    seq = MapSequence(g, [Matrix.identity(QQ, g.dim), benkovic_improper_map(g)])
    assert verify_lhd(seq).ok
    verdict = decide_proper(seq)
    assert verdict.status == "IMPROPER"
    assert verdict.witness["condition"] == "A'"


def test_benkovic_ordinary_extension_is_improper_at_order_three():
    for field in (QQ, PrimeField(7)):
        g = benkovic(field)
        seq = ordinary_sequence(g, benkovic_improper_map(g), 3)
        assert verify_lhd(seq).ok
        verdict = decide_proper(seq)
        assert verdict.status == "IMPROPER"


def test_synthesized_lhd_on_full_matrix_f5_is_proper():
    rng = random.Random(7)
    g = full_matrix(PrimeField(5), 3)
    seq = random_proper_lhd(g, 3, rng)
    verdict = decide_proper(seq)
    assert verdict.status == "PROPER"


def test_certificate_soundness_and_crosscheck():
    rng = random.Random(11)
    for g in catalog_gmas(PrimeField(11))[:4]:
        seq = random_proper_lhd(g, 3, rng)
        verdict = decide_proper(seq)
        assert verdict.status == "PROPER"
        cert = verdict.certificate
        assert verify_certificate(seq, cert.d, cert.tau, 3, g).ok
        en = extract_entries(seq)
        fam = lhd_families(en, 3, g)
        assert eq34_crosscheck(en, fam, cert, 3, g).ok


def test_verify_certificate_examples():
    g = full_matrix(QQ, 2)
    zero = zero_sequence(g, 2)
    assert verify_certificate(zero, zero, zero_tau(g, 2), 2, g).ok
    # tau_1 not center-valued: fails
    bad_tau_mats = [Matrix.zeros(QQ, g.dim, g.dim)]
    cols = [[QQ.zero] * g.dim for _ in range(g.dim)]
    cols[g.a_range[0]][g.a_range[0]] = QQ.one  # a -> a (not central in G)
    bad_tau_mats.append(Matrix.from_columns(QQ, [tuple(c) for c in cols]))
    bad_tau_mats.append(Matrix.zeros(QQ, g.dim, g.dim))
    bad_tau = MapSequence(g, bad_tau_mats, is_tau=True)
    seq = seq_sum(zero, bad_tau)
    res = verify_certificate(seq, zero, bad_tau, 2, g)
    assert not res.ok and "tau" in res.witness["error"]


def test_eq34_crosscheck_rejects_perturbed_corrections():
    rng = random.Random(13)
    g = full_matrix(PrimeField(7), 2)
    seq = random_proper_lhd(g, 2, rng)
    verdict = decide_proper(seq)
    cert = verdict.certificate
    en = extract_entries(seq)
    fam = lhd_families(en, 2, g)
    ell = list(cert.ell)
    bump = Matrix(g.field, [[1] * g.ctx.A.dim] * g.ctx.A.dim, cols=g.ctx.A.dim)
    ell[1] = ell[1].add(bump)
    from gmader.properness import Certificate
    perturbed = Certificate(cert.d, cert.tau, tuple(ell), cert.ell_prime)
    assert not eq34_crosscheck(en, fam, perturbed, 2, g).ok


def test_improper_shifted_and_graded_variants():
    rng = random.Random(17)
    for seq in benkovic_improper_variants(PrimeField(7), rng, 6):
        verdict = decide_proper(seq)
        assert verdict.status == "IMPROPER"


def test_corollary_completeness_on_weakly_faithful_instances():
    # PROPER <=> (A') and (B') on weakly faithful gmas, both directions
    rng = random.Random(19)
    field = PrimeField(11)
    decided = []
    for g in catalog_gmas(field)[:4]:
        for _ in range(2):
            decided.append(random_proper_lhd(g, 2, rng))
    decided += benkovic_improper_variants(field, rng, 4)
    for seq in decided:
        g = seq.gma
        assert faithfulness(g).weakly_faithful
        order = seq.order
        fam = _families(seq, order)
        criteria = check_a_prime(fam, order, g).ok and check_b_prime(fam, order, g).ok
        verdict = decide_proper(seq)
        assert (verdict.status == "PROPER") == criteria
        assert verdict.status in ("PROPER", "IMPROPER")


def test_dead_end_instance_paths():
    # not weakly faithful: improper-looking -> UNKNOWN; synthesized -> PROPER
    g = benkovic_dead_end(QQ)
    assert not faithfulness(g).weakly_faithful
    seq = MapSequence(g, [Matrix.identity(QQ, g.dim), benkovic_dead_end_map(g)])
    assert verify_lhd(seq).ok
    verdict = decide_proper(seq)
    assert verdict.status == "UNKNOWN"
    assert "not weakly faithful" in verdict.reason
    rng = random.Random(23)
    good = random_proper_lhd(g, 2, rng)
    verdict = decide_proper(good)
    assert verdict.status == "PROPER"


def _gap(seq):
    # L'_{2k} = L_k with odd orders zero: substituting t -> t^2 in the
    # generating series preserves both identities
    g = seq.gma
    zero = Matrix.zeros(g.field, g.dim, g.dim)
    mats = [seq.mats[k // 2] if k % 2 == 0 else zero
            for k in range(2 * seq.order + 1)]
    return MapSequence(g, mats)


def test_improper_with_first_failure_beyond_order_one():
    # the gap-reindexed displayed map is a Lie sequence whose projected-center
    # failure first appears at order 2
    g = benkovic(QQ)
    base = MapSequence(g, [Matrix.identity(QQ, g.dim), benkovic_improper_map(g)])
    seq = _gap(base)
    assert seq.order == 2
    assert verify_lhd(seq).ok
    fam = _families(seq, 2)
    assert check_a_prime(fam, 1, g).ok          # nothing wrong at order 1
    verdict = decide_proper(seq)
    assert verdict.status == "IMPROPER"
    assert verdict.witness["k"] == 2
    assert improper_witness_holds(fam, g, verdict.witness)


def test_gap_reindexing_preserves_properness():
    rng = random.Random(31)
    g = full_matrix(PrimeField(7), 2)
    seq = _gap(random_proper_lhd(g, 2, rng))
    assert verify_lhd(seq).ok
    assert decide_proper(seq).status == "PROPER"


def test_decide_is_deterministic():
    rng = random.Random(37)
    g = full_matrix(PrimeField(11), 3)
    seq = random_proper_lhd(g, 3, rng)
    v1 = decide_proper(seq)
    v2 = decide_proper(seq)
    assert v1.certificate.d == v2.certificate.d
    assert v1.certificate.tau == v2.certificate.tau
    assert v1.certificate.ell == v2.certificate.ell


def test_dimension_twelve_instance():
    from gmader.sampling import trivial_double
    g = trivial_double(PrimeField(11), 3, 3, (0, 1, 2), (0, 1, 2),
                       (0, 1, 2), (0, 1, 2))
    assert g.dim == 12
    rng = random.Random(41)
    seq = random_proper_lhd(g, 3, rng)
    verdict = decide_proper(seq)
    assert verdict.status == "PROPER"


def test_sufficiency_reports():
    s = check_sufficient(full_matrix(PrimeField(5), 3))
    assert s.guaranteed and s.branch == "central-ideal"
    assert s.no_central_ideal_b and not s.no_central_ideal_a
    s = check_sufficient(benkovic(QQ))
    assert not s.guaranteed
    assert not s.proj_a_equals_center_a
    s = check_sufficient(full_matrix(QQ, 2))
    assert s.guaranteed and s.branch == "domain"
    assert s.domain_a.is_yes and s.domain_b.is_yes


def test_strong_faithfulness_branch_fires_somewhere():
    # the one-dimensional corner modules of the 2x2 Peirce context are
    # strongly faithful, so II.iii holds there as well
    rep = check_sufficient(full_matrix(QQ, 2))
    assert rep.strongly_faithful_m.is_yes


def test_remark_faithful_m_kills_cross_commutators():
    rng = random.Random(29)
    field = PrimeField(11)
    for g in catalog_gmas(field):
        if not faithfulness(g).m_faithful:
            continue
        seq = random_proper_lhd(g, 3, rng)
        fam = _families(seq, 3)
        ctx = g.ctx
        for k in range(1, 4):
            for e in range(ctx.A.dim):
                for f in range(ctx.A.dim):
                    comm = ctx.A.commutator(ctx.A.basis_vector(e),
                                            ctx.A.basis_vector(f))
                    assert all(x == 0 for x in fam.Qpp[k].apply(comm))
            for e in range(ctx.B.dim):
                for f in range(ctx.B.dim):
                    comm = ctx.B.commutator(ctx.B.basis_vector(e),
                                            ctx.B.basis_vector(f))
                    assert all(x == 0 for x in fam.Ppp[k].apply(comm))
