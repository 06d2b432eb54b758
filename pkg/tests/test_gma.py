"""Morita contexts, the block algebra, centers, faithfulness and fixtures."""

import random
from fractions import Fraction

import pytest

from gmader.algebra import (
    product_field, scalar_field_algebra, upper_triangular_algebra, validate,
)
from gmader.gma import (
    Bimodule, GmaError, MoritaContext, NotWeaklyFaithfulError, benkovic,
    benkovic_improper_map, build_gma, center_gma, compute_phi, faithfulness,
    full_matrix, is_trivial, project_a, project_b, regular_bimodule,
    triangular, zero_bimodule,
)
from gmader.linalg import Matrix, PrimeField, QQ, unit_vector, zero_vector
from gmader.sampling import (
    catalog_gmas, incidence_triangular, random_triangular, trivial_double,
)


def test_triangular_fixture_is_ut2():
    a = scalar_field_algebra(QQ)
    g = triangular(a, regular_bimodule(a), a)
    assert g.dim == 3
    assert validate(g.algebra) == []
    assert is_trivial(g)


def test_full_matrix_fixture_dimensions():
    g = full_matrix(QQ, 3)
    assert (g.ctx.A.dim, g.ctx.B.dim) == (1, 4)
    assert g.dim == 9
    assert not is_trivial(g)
    g2 = full_matrix(PrimeField(5), 2)
    assert g2.dim == 4


def test_benkovic_fixture_shape():
    g = benkovic(QQ)
    assert g.dim == 10
    assert (g.ctx.A.dim, g.ctx.M.dim, g.ctx.N.dim, g.ctx.B.dim) == (2, 3, 3, 2)
    assert is_trivial(g)
    assert validate(g.algebra) == []


def test_context_rejects_two_zero_modules():
    a = scalar_field_algebra(QQ)
    ctx = MoritaContext(a, a, zero_bimodule(QQ, 1), zero_bimodule(QQ, 1), [], [])
    with pytest.raises(GmaError) as err:
        build_gma(ctx)
    assert any("nonzero" in v for v in err.value.violations)


def test_context_rejects_characteristic_two():
    a = scalar_field_algebra(PrimeField(2))
    with pytest.raises(GmaError):
        triangular(a, regular_bimodule(a), a)


def test_context_rejects_broken_action():
    # left action that ignores the unit: 1.m = 0
    a = scalar_field_algebra(QQ)
    m = Bimodule(QQ, ["m"], [[(Fraction(0),)]], [[(Fraction(1),)]])
    ctx = MoritaContext(a, a, m, zero_bimodule(QQ, 1), [[]], [])
    with pytest.raises(GmaError) as err:
        build_gma(ctx)
    assert any("1.m" in v for v in err.value.violations)


def test_projections():
    g = full_matrix(QQ, 2)
    one = g.unit()
    assert project_a(g, one) == g.ctx.A.unit
    assert project_b(g, one) == g.ctx.B.unit
    m = g.embed_m(g.ctx.M.basis_vector(0))
    assert all(x == 0 for x in project_a(g, m))
    assert all(x == 0 for x in project_b(g, m))


def test_center_of_peirce_m2_is_spanned_by_the_unit():
    g = full_matrix(QQ, 2)
    info = center_gma(g)
    assert info.subspace.dim == 1
    assert info.subspace.contains(g.unit())


def test_center_cross_check_on_catalog():
    for g in catalog_gmas(PrimeField(7)):
        info = center_gma(g)
        for a, b in info.pairs:
            for j in range(g.ctx.M.dim):
                m = g.ctx.M.basis_vector(j)
                assert g.ctx.M.left_act(a, m) == g.ctx.M.right_act(m, b)
            for j in range(g.ctx.N.dim):
                n = g.ctx.N.basis_vector(j)
                assert g.ctx.N.right_act(n, a) == g.ctx.N.left_act(b, n)


def test_center_of_benkovic_is_one_dimensional():
    g = benkovic(QQ)
    info = center_gma(g)
    assert info.subspace.dim == 1
    assert info.subspace.contains(g.unit())


def test_faithfulness_of_peirce_m2():
    rep = faithfulness(full_matrix(QQ, 2))
    assert rep.m_faithful and rep.n_faithful
    assert rep.weakly_faithful
    # one-dimensional modules with faithful actions are strongly faithful
    assert rep.strongly_faithful_m.is_yes


def test_faithfulness_of_benkovic():
    rep = faithfulness(benkovic(QQ))
    assert rep.m_faithful  # the unit of W lies in M
    assert rep.weakly_faithful
    # am = 0 has the witness (m, m'): both nonzero with zero product
    assert rep.strongly_faithful_m.is_no


def test_strong_faithfulness_exhaustive_over_f3():
    g = full_matrix(PrimeField(3), 3)
    rep = faithfulness(g)
    assert rep.m_faithful
    # a e = 0 for a in F and e a row vector forces a = 0 or e = 0
    assert rep.strong_m_clause_a.is_yes
    # clause (b) fails: two distinct row vectors can annihilate under B
    assert rep.strongly_faithful_m.is_yes


def test_strong_faithfulness_unknown_over_q():
    g = full_matrix(QQ, 3)
    rep = faithfulness(g)
    # M is a 2-dimensional module over Q: no exhaustive search, no witness
    assert rep.strong_m_clause_a.status in ("yes", "unknown")
    if rep.strong_m_clause_a.status == "unknown":
        assert rep.strongly_faithful_m.status in ("yes", "unknown")


def test_m_or_n_faithful_implies_weakly_faithful():
    for field in (QQ, PrimeField(7)):
        for g in catalog_gmas(field):
            rep = faithfulness(g)
            if rep.m_faithful or rep.n_faithful:
                assert rep.weakly_faithful


def test_triangular_weak_faithfulness_iff_m_faithful():
    rng = random.Random(2024)
    seen_unfaithful = False
    for _ in range(20):
        g = random_triangular(PrimeField(7), rng)
        rep = faithfulness(g)
        assert rep.weakly_faithful == rep.m_faithful
        seen_unfaithful |= not rep.m_faithful
    assert seen_unfaithful  # the sample really exercises both sides


def test_phi_on_peirce_m2_is_scalar_identification():
    g = full_matrix(QQ, 2)
    iso = compute_phi(g)
    assert iso.domain.dim == 1
    assert iso.apply(g.ctx.A.unit) == g.ctx.B.unit
    assert iso.inverse(g.ctx.B.unit) == g.ctx.A.unit


def test_phi_on_triangular_scalars_is_identity():
    a = scalar_field_algebra(QQ)
    g = triangular(a, regular_bimodule(a), a)
    iso = compute_phi(g)
    assert iso.apply((Fraction(5),)) == (Fraction(5),)


def test_phi_on_benkovic():
    g = benkovic(QQ)
    iso = compute_phi(g)
    # the center is the scalars, so phi only identifies 1_A with 1_B
    assert iso.domain.dim == 1
    assert iso.apply(g.ctx.A.unit) == g.ctx.B.unit
    with pytest.raises(GmaError):
        iso.apply((Fraction(0), Fraction(1)))  # m is not a central projection


def test_phi_requires_weak_faithfulness():
    g = incidence_triangular(QQ, 2, 1, (0,), (0,))  # a = eps_2 kills M, N = 0
    assert not faithfulness(g).weakly_faithful
    with pytest.raises(NotWeaklyFaithfulError):
        compute_phi(g)


def test_phi_is_multiplicative_on_catalog():
    for g in catalog_gmas(PrimeField(11)):
        if not faithfulness(g).weakly_faithful:
            continue
        iso = compute_phi(g)
        for a in iso.domain.basis:
            for a2 in iso.domain.basis:
                prod = g.ctx.A.mul(a, a2)
                assert iso.apply(prod) == g.ctx.B.mul(iso.apply(a), iso.apply(a2))


def test_is_trivial():
    assert is_trivial(benkovic(QQ))
    assert not is_trivial(full_matrix(QQ, 2))
    a = scalar_field_algebra(QQ)
    assert is_trivial(triangular(a, regular_bimodule(a), a))
    assert is_trivial(trivial_double(QQ, 2, 2, (0, 1), (0, 1), (0, 1), (0, 1)))


def test_build_gma_passes_validate_on_random_contexts():
    rng = random.Random(5)
    for _ in range(8):
        g = random_triangular(PrimeField(5), rng)
        assert validate(g.algebra) == []
    g = trivial_double(PrimeField(5), 2, 3, (0, 1), (0, 2), (1, 2), (0, 1))
    assert validate(g.algebra) == []


def test_benkovic_improper_map_matches_displayed_formula():
    g = benkovic(QQ)
    L = benkovic_improper_map(g)
    # input (r + r'm, s + s'm + s''m'; t + t'm + t''m', u + u'm')
    vec = [Fraction(0)] * 10
    vec[g.a_range[1]] = Fraction(2)   # r' = 2
    vec[g.m_range[1]] = Fraction(3)   # s' = 3
    vec[g.m_range[2]] = Fraction(5)   # s'' = 5
    vec[g.n_range[1]] = Fraction(7)   # t' = 7
    vec[g.b_range[1]] = Fraction(11)  # u' = 11
    out = L.apply(tuple(vec))
    assert out[g.a_range[1]] == Fraction(11)    # u'm
    assert out[g.m_range[1]] == Fraction(-5)    # -s''m
    assert out[g.m_range[2]] == Fraction(-3)    # -s'm'
    assert out[g.n_range[2]] == Fraction(-7)    # -t'm'
    assert out[g.b_range[1]] == Fraction(2)     # r'm'
