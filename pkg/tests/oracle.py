"""Independent evaluation of the displayed closed forms, used as test oracles.

Words are evaluated step by step through the raw context operations (module
actions and pairings) on tagged block elements, deliberately avoiding the
library's embedded-chain evaluator.
"""

from gmader.mapseq import extract_entries
from gmader.structure import hd_families, lhd_families, word_sums


def w(gma, *factors):
    """Multiply tagged block elements left to right; returns (tag, vector)."""
    ctx = gma.ctx
    kind, vec = factors[0]
    for kind2, vec2 in factors[1:]:
        if kind == "a" and kind2 == "a":
            vec = ctx.A.mul(vec, vec2)
        elif kind == "a" and kind2 == "m":
            vec, kind = ctx.M.left_act(vec, vec2), "m"
        elif kind == "m" and kind2 == "n":
            vec, kind = ctx.pair_mn(vec, vec2), "a"
        elif kind == "m" and kind2 == "b":
            vec = ctx.M.right_act(vec, vec2)
        elif kind == "n" and kind2 == "m":
            vec, kind = ctx.pair_nm(vec, vec2), "b"
        elif kind == "n" and kind2 == "a":
            vec = ctx.N.right_act(vec, vec2)
        elif kind == "b" and kind2 == "n":
            vec, kind = ctx.N.left_act(vec, vec2), "n"
        elif kind == "b" and kind2 == "b":
            vec = ctx.B.mul(vec, vec2)
        else:
            raise AssertionError(f"bad word {kind}.{kind2}")
    return kind, vec


def vadd(field, *vecs):
    out = vecs[0]
    for v in vecs[1:]:
        out = tuple(field.reduce(x + y) for x, y in zip(out, v))
    return out


def vneg(field, v):
    return tuple(field.reduce(-x) for x in v)


def assert_lhd_closed_forms(g, seq):
    """Compare the order-2 and order-3 family maps with the displayed forms."""
    field = g.field
    ctx = g.ctx
    en = extract_entries(seq)
    fam = lhd_families(en, 3, g)
    m1, m2 = en.m_elems[1], en.m_elems[2]
    n1, n2 = en.n_elems[1], en.n_elems[2]
    for e in range(ctx.A.dim):
        a = ctx.A.basis_vector(e)
        assert fam.low_p[2].apply(a) == w(g, ("a", a), ("m", m1), ("n", n1))[1]
        assert fam.low_pp[2].apply(a) == w(g, ("m", m1), ("n", n1), ("a", a))[1]
        assert fam.low_qpp[2].apply(a) == w(g, ("n", n1), ("a", a), ("m", m1))[1]
        p1a = fam.P[1].apply(a)
        pp1a = fam.Pp[1].apply(a)
        q1a = fam.Qpp[1].apply(a)
        exp = vadd(field,
                   w(g, ("a", a), ("m", m1), ("n", n2))[1],
                   w(g, ("a", a), ("m", m2), ("n", n1))[1],
                   w(g, ("a", p1a), ("m", m1), ("n", n1))[1],
                   vneg(field, w(g, ("m", ctx.M.right_act(m1, q1a)), ("n", n1))[1]))
        assert fam.low_p[3].apply(a) == exp
        exp = vadd(field,
                   w(g, ("m", m1), ("n", n2), ("a", a))[1],
                   w(g, ("m", m2), ("n", n1), ("a", a))[1],
                   w(g, ("m", m1), ("n", ctx.N.right_act(n1, pp1a)))[1],
                   vneg(field, w(g, ("m", m1), ("n", ctx.N.left_act(q1a, n1)))[1]))
        assert fam.low_pp[3].apply(a) == exp
        exp = vadd(field,
                   w(g, ("n", n1), ("a", a), ("m", m2))[1],
                   w(g, ("n", n2), ("a", a), ("m", m1))[1],
                   w(g, ("n", n1), ("a", p1a), ("m", m1))[1],
                   vneg(field, w(g, ("n", n1), ("m", ctx.M.right_act(m1, q1a)))[1]))
        assert fam.low_qpp[3].apply(a) == exp
    for e in range(ctx.B.dim):
        b = ctx.B.basis_vector(e)
        assert fam.low_ppp[2].apply(b) == w(
            g, ("m", ctx.M.right_act(m1, b)), ("n", n1))[1]
        assert fam.low_q[2].apply(b) == w(
            g, ("n", n1), ("m", ctx.M.right_act(m1, b)))[1]
        assert fam.low_qp[2].apply(b) == w(g, ("b", b), ("n", n1), ("m", m1))[1]
        q1b = fam.Q[1].apply(b)
        pp1b = fam.Ppp[1].apply(b)
        exp = vadd(field,
                   w(g, ("m", ctx.M.right_act(m1, b)), ("n", n2))[1],
                   w(g, ("m", ctx.M.right_act(m2, b)), ("n", n1))[1],
                   w(g, ("m", ctx.M.right_act(m1, q1b)), ("n", n1))[1],
                   vneg(field, w(g, ("a", pp1b), ("m", m1), ("n", n1))[1]))
        assert fam.low_ppp[3].apply(b) == exp
        exp = vadd(field,
                   w(g, ("n", n1), ("m", ctx.M.right_act(m2, b)))[1],
                   w(g, ("n", n2), ("m", ctx.M.right_act(m1, b)))[1],
                   w(g, ("n", n1), ("m", ctx.M.right_act(m1, q1b)))[1],
                   vneg(field, w(g, ("n", n1), ("a", pp1b), ("m", m1))[1]))
        assert fam.low_q[3].apply(b) == exp
        exp = vadd(field,
                   w(g, ("b", b), ("n", n1), ("m", m2))[1],
                   w(g, ("b", b), ("n", n2), ("m", m1))[1],
                   w(g, ("b", q1b), ("n", n1), ("m", m1))[1],
                   vneg(field, w(g, ("n", n1), ("a", pp1b), ("m", m1))[1]))
        assert fam.low_qp[3].apply(b) == exp
    return fam


def assert_hd_closed_forms(g, seq):
    field = g.field
    ctx = g.ctx
    en = extract_entries(seq)
    fam = hd_families(en, 3, g)
    m1, m2 = en.m_elems[1], en.m_elems[2]
    n1, n2 = en.n_elems[1], en.n_elems[2]
    for e in range(ctx.A.dim):
        a = ctx.A.basis_vector(e)
        assert fam.low_p[2].apply(a) == w(g, ("a", a), ("m", m1), ("n", n1))[1]
        assert fam.low_pp[2].apply(a) == w(g, ("m", m1), ("n", n1), ("a", a))[1]
        exp = vadd(field,
                   w(g, ("a", a), ("m", m1), ("n", n2))[1],
                   w(g, ("a", a), ("m", m2), ("n", n1))[1],
                   w(g, ("a", fam.P[1].apply(a)), ("m", m1), ("n", n1))[1])
        assert fam.low_p[3].apply(a) == exp
        exp = vadd(field,
                   w(g, ("m", m1), ("n", n2), ("a", a))[1],
                   w(g, ("m", m2), ("n", n1), ("a", a))[1],
                   w(g, ("m", m1), ("n", n1), ("a", fam.Pp[1].apply(a)))[1])
        assert fam.low_pp[3].apply(a) == exp
    for e in range(ctx.B.dim):
        b = ctx.B.basis_vector(e)
        assert fam.low_q[2].apply(b) == w(g, ("n", n1), ("m", m1), ("b", b))[1]
        assert fam.low_qp[2].apply(b) == w(g, ("b", b), ("n", n1), ("m", m1))[1]
        exp = vadd(field,
                   w(g, ("n", n1), ("m", m2), ("b", b))[1],
                   w(g, ("n", n2), ("m", m1), ("b", b))[1],
                   w(g, ("n", n1), ("m", m1), ("b", fam.Q[1].apply(b)))[1])
        assert fam.low_q[3].apply(b) == exp
        exp = vadd(field,
                   w(g, ("b", b), ("n", n1), ("m", m2))[1],
                   w(g, ("b", b), ("n", n2), ("m", m1))[1],
                   w(g, ("b", fam.Qp[1].apply(b)), ("n", n1), ("m", m1))[1])
        assert fam.low_qp[3].apply(b) == exp
    return fam


def assert_word_sum_displays(g, ms, ns):
    """The order <= 4 word sums against their displayed expansions."""
    field = g.field
    n1, m1 = word_sums(g, ms, ns, 1)
    assert (n1, m1) == (tuple(ns[1]), tuple(ms[1]))
    n2, m2 = word_sums(g, ms, ns, 2)
    assert (n2, m2) == (tuple(ns[2]), tuple(ms[2]))
    n3, m3 = word_sums(g, ms, ns, 3)
    assert n3 == vadd(field, w(g, ("n", ns[1]), ("m", ms[1]), ("n", ns[1]))[1],
                      ns[3])
    assert m3 == vadd(field, w(g, ("m", ms[1]), ("n", ns[1]), ("m", ms[1]))[1],
                      ms[3])
    n4, m4 = word_sums(g, ms, ns, 4)
    assert n4 == vadd(field,
                      w(g, ("n", ns[1]), ("m", ms[1]), ("n", ns[2]))[1],
                      w(g, ("n", ns[1]), ("m", ms[2]), ("n", ns[1]))[1],
                      w(g, ("n", ns[2]), ("m", ms[1]), ("n", ns[1]))[1],
                      ns[4])
    assert m4 == vadd(field,
                      w(g, ("m", ms[1]), ("n", ns[1]), ("m", ms[2]))[1],
                      w(g, ("m", ms[1]), ("n", ns[2]), ("m", ms[1]))[1],
                      w(g, ("m", ms[2]), ("n", ns[1]), ("m", ms[1]))[1],
                      ms[4])
