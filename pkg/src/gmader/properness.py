"""Deciding properness of a truncated Lie higher derivation.

The decision follows the center-projection criterion: the two cross
families attached to the sequence must take values in the projected center,
and the paired cross values on module products must assemble to central
elements.  On weakly faithful instances this is a complete criterion; the
PROPER branch constructs an explicit certificate (a multiplicative sequence
plus a center-valued commutator-vanishing remainder) and re-verifies it
from scratch before returning.  Every other outcome is IMPROPER with a
re-checkable witness or UNKNOWN with a reason.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .linalg import (
    Matrix, is_zero_vector, solve, span, unit_vector, zero_vector,
)
from .algebra import Trivalent, center as algebra_center, has_nonzero_central_ideal, is_domain
from .gma import Gma, center_gma, compute_phi, faithfulness
from .mapseq import (
    CheckResult, EntryMaps, MapSequence, extract_entries,
    is_center_valued_vanishing, reconstruct, seq_truncate, verify_hd,
    verify_lhd,
)
from .structure import LhdFamilies, hd_determined_entries, lhd_families


class PropernessError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Certificate:
    d: MapSequence
    tau: MapSequence
    ell: tuple        # index 0..K, [0] zero; maps A -> Z(A)
    ell_prime: tuple  # index 0..K, [0] zero; maps B -> Z(B)


@dataclass(frozen=True)
class GammaMaps:
    """gamma_k(a, b) = ell_k(a) + P''_k(b); gamma'_k(a, b) = Q''_k(a) + ell'_k(b)."""
    ell: tuple
    ppp: tuple
    qpp: tuple
    ell_prime: tuple

    def gamma(self, k: int, avec, bvec):
        field = self.ell[k].field
        u = self.ell[k].apply(avec)
        v = self.ppp[k].apply(bvec)
        return tuple(field.reduce(x + y) for x, y in zip(u, v))

    def gamma_prime(self, k: int, avec, bvec):
        field = self.qpp[k].field
        u = self.qpp[k].apply(avec)
        v = self.ell_prime[k].apply(bvec)
        return tuple(field.reduce(x + y) for x, y in zip(u, v))


@dataclass(frozen=True)
class Verdict:
    status: str  # "PROPER" | "IMPROPER" | "UNKNOWN"
    certificate: Optional[Certificate] = None
    witness: Optional[dict] = None
    reason: Optional[str] = None


def _center_projections(gma: Gma):
    info = center_gma(gma)
    pi_a = span(gma.field, gma.ctx.A.dim, [a for a, _ in info.pairs])
    pi_b = span(gma.field, gma.ctx.B.dim, [b for _, b in info.pairs])
    return info, pi_a, pi_b


def check_a_prime(families: LhdFamilies, order: int, gma: Gma) -> CheckResult:
    """Cross families land in the projected center, on every basis vector."""
    _, pi_a, pi_b = _center_projections(gma)
    for k in range(1, order + 1):
        for e in range(gma.ctx.A.dim):
            val = families.Qpp[k].column(e)
            if not pi_b.contains(val):
                return CheckResult(False, {
                    "condition": "A'", "side": "A", "k": k, "basis": e,
                    "value": val})
        for e in range(gma.ctx.B.dim):
            val = families.Ppp[k].column(e)
            if not pi_a.contains(val):
                return CheckResult(False, {
                    "condition": "A'", "side": "B", "k": k, "basis": e,
                    "value": val})
    return CheckResult(True)


def check_b_prime(families: LhdFamilies, order: int, gma: Gma) -> CheckResult:
    """P''_k(nm) + Q''_k(mn) is central in G, on every module basis pair."""
    info = center_gma(gma)
    ctx = gma.ctx
    for k in range(1, order + 1):
        for e in range(ctx.M.dim):
            m = ctx.M.basis_vector(e)
            for f in range(ctx.N.dim):
                n = ctx.N.basis_vector(f)
                mn = ctx.pair_mn(m, n)
                nm = ctx.pair_nm(n, m)
                g = gma.assemble(families.Ppp[k].apply(nm), ctx.M.zero(),
                                 ctx.N.zero(), families.Qpp[k].apply(mn))
                if not info.subspace.contains(g):
                    return CheckResult(False, {
                        "condition": "B'", "k": k, "pair": (e, f), "value": g})
    return CheckResult(True)


def improper_witness_holds(families: LhdFamilies, gma: Gma, witness: dict) -> bool:
    """Re-evaluate an IMPROPER witness against freshly computed data."""
    info, pi_a, pi_b = _center_projections(gma)
    k = witness["k"]
    if witness["condition"] == "A'":
        e = witness["basis"]
        if witness["side"] == "A":
            return not pi_b.contains(families.Qpp[k].column(e))
        return not pi_a.contains(families.Ppp[k].column(e))
    if witness["condition"] == "B'":
        ctx = gma.ctx
        e, f = witness["pair"]
        mn = ctx.pair_mn(ctx.M.basis_vector(e), ctx.N.basis_vector(f))
        nm = ctx.pair_nm(ctx.N.basis_vector(f), ctx.M.basis_vector(e))
        g = gma.assemble(families.Ppp[k].apply(nm), ctx.M.zero(), ctx.N.zero(),
                         families.Qpp[k].apply(mn))
        return not info.subspace.contains(g)
    return False


# ---------------------------------------------------------------------------
# certificate construction and verification
# ---------------------------------------------------------------------------

def build_certificate(gma: Gma, order: int, entries: EntryMaps,
                      families: LhdFamilies, ell: Sequence,
                      ell_prime: Sequence) -> Certificate:
    """Assemble (D, tau) from the chosen center-valued corrections.

    D carries the diagonal families P_k - ell_k and Q_k - ell'_k together
    with the original module blocks; every remaining block of D is filled
    in through the determined expressions of the multiplicative structure
    theorem.  tau carries the four diagonal cross maps and nothing else.
    """
    field = gma.field
    ctx = gma.ctx
    sans_p = [Matrix.identity(field, ctx.A.dim)]
    sans_q = [Matrix.identity(field, ctx.B.dim)]
    for k in range(1, order + 1):
        sans_p.append(families.P[k].sub(ell[k]))
        sans_q.append(families.Q[k].sub(ell_prime[k]))
    d_entries = hd_determined_entries(
        gma, order, sans_p, sans_q,
        [entries.block("f3", k) for k in range(order + 1)],
        [entries.block("g4", k) for k in range(order + 1)],
        entries.m_elems, entries.n_elems)
    d_seq = reconstruct(d_entries)

    tau_mats = [Matrix.zeros(field, gma.dim, gma.dim)]
    for k in range(1, order + 1):
        cols = []
        for idx in range(gma.dim):
            col = [field.zero] * gma.dim
            if idx in gma.a_range:
                a = unit_vector(field, ctx.A.dim, idx - gma.a_range[0])
                top = ell[k].apply(a)
                bot = families.Qpp[k].apply(a)
            elif idx in gma.b_range:
                b = unit_vector(field, ctx.B.dim, idx - gma.b_range[0])
                top = families.Ppp[k].apply(b)
                bot = ell_prime[k].apply(b)
            else:
                cols.append(tuple(col))
                continue
            for t, v in enumerate(top):
                col[gma.a_range[0] + t] = v
            for t, v in enumerate(bot):
                col[gma.b_range[0] + t] = v
            cols.append(tuple(col))
        tau_mats.append(Matrix.from_columns(field, cols))
    tau = MapSequence(gma, tau_mats, is_tau=True)
    return Certificate(d_seq, tau, tuple(ell), tuple(ell_prime))


def verify_certificate(seq: MapSequence, d: MapSequence, tau: MapSequence,
                       order: int, gma: Gma) -> CheckResult:
    """Certificate checks, independent of how the certificate was produced."""
    if d.order < order or tau.order < order or seq.order < order:
        return CheckResult(False, {"error": "orders do not match"})
    for k in range(1, order + 1):
        if seq.mats[k] != d.mats[k].add(tau.mats[k]):
            return CheckResult(False, {"error": "L_k != D_k + tau_k", "k": k})
    res = verify_hd(d, order)
    if not res.ok:
        return CheckResult(False, {"error": "D is not a higher derivation",
                                   "witness": res.witness})
    res = is_center_valued_vanishing(tau, order)
    if not res.ok:
        return CheckResult(False, {"error": "tau fails the center-valued check",
                                   "witness": res.witness})
    return CheckResult(True)


def eq34_crosscheck(entries: EntryMaps, families: LhdFamilies,
                    certificate: Certificate, order: int, gma: Gma) -> CheckResult:
    """Commutator-trace identities relating the certificate to the module
    blocks.  With gamma built from the certificate's corrections,
    gamma_k(mn, -nm) and gamma'_k(mn, -nm) must vanish, and

      (P_k - ell_k)(mn)  = sum_{i+j=k} ( p3_i(m) p4_j(n) + f3_i(m) g4_j(n)
                            - p4_j(n) p3_i(m) - f4_j(n) g3_i(m) )
                            + p_k(mn) + p''_k(nm) - gamma_k(mn, -nm),
      (Q_k - ell'_k)(nm) = sum_{i+j=k} ( g4_j(n) f3_i(m) + q4_j(n) q3_i(m)
                            - g3_i(m) f4_j(n) - q3_i(m) q4_j(n) )
                            + q''_k(mn) + q_k(nm) + gamma'_k(mn, -nm),

    on all module basis pairs.  When the module-cross blocks and word
    corrections vanish (the reduced presentation used in the source
    argument) these collapse to the two displayed trace equations."""
    field = gma.field
    ctx = gma.ctx
    gam = GammaMaps(certificate.ell, tuple(families.Ppp),
                    tuple(families.Qpp), certificate.ell_prime)
    b = entries.blocks
    for k in range(1, order + 1):
        sans_p = families.P[k].sub(certificate.ell[k])
        sans_q = families.Q[k].sub(certificate.ell_prime[k])
        for e in range(ctx.M.dim):
            m = ctx.M.basis_vector(e)
            for f in range(ctx.N.dim):
                n = ctx.N.basis_vector(f)
                mn = ctx.pair_mn(m, n)
                nm = ctx.pair_nm(n, m)
                neg_nm = tuple(field.reduce(-x) for x in nm)
                gval = gam.gamma(k, mn, neg_nm)
                gpval = gam.gamma_prime(k, mn, neg_nm)
                if not is_zero_vector(gval):
                    return CheckResult(False, {
                        "identity": "gamma(mn,-nm) = 0", "k": k, "pair": (e, f)})
                if not is_zero_vector(gpval):
                    return CheckResult(False, {
                        "identity": "gamma'(mn,-nm) = 0", "k": k, "pair": (e, f)})
                rhs_a = zero_vector(field, ctx.A.dim)
                rhs_b = zero_vector(field, ctx.B.dim)
                for i in range(k + 1):
                    j = k - i
                    p3m = b["p3"][i].apply(m)
                    f3m = b["f3"][i].apply(m)
                    g3m = b["g3"][i].apply(m)
                    q3m = b["q3"][i].apply(m)
                    p4n = b["p4"][j].apply(n)
                    f4n = b["f4"][j].apply(n)
                    g4n = b["g4"][j].apply(n)
                    q4n = b["q4"][j].apply(n)
                    rhs_a = tuple(field.reduce(x + y + z - u - v) for x, y, z, u, v in
                                  zip(rhs_a, ctx.A.mul(p3m, p4n),
                                      ctx.pair_mn(f3m, g4n),
                                      ctx.A.mul(p4n, p3m),
                                      ctx.pair_mn(f4n, g3m)))
                    rhs_b = tuple(field.reduce(x + y + z - u - v) for x, y, z, u, v in
                                  zip(rhs_b, ctx.pair_nm(g4n, f3m),
                                      ctx.B.mul(q4n, q3m),
                                      ctx.pair_nm(g3m, f4n),
                                      ctx.B.mul(q3m, q4n)))
                corr_a = families.low_p[k].apply(mn)
                corr_a2 = families.low_ppp[k].apply(nm)
                corr_b = families.low_qpp[k].apply(mn)
                corr_b2 = families.low_q[k].apply(nm)
                want_a = tuple(field.reduce(x + y + z - w) for x, y, z, w in
                               zip(rhs_a, corr_a, corr_a2, gval))
                want_b = tuple(field.reduce(x + y + z + w) for x, y, z, w in
                               zip(rhs_b, corr_b, corr_b2, gpval))
                lhs_a = sans_p.apply(mn)
                lhs_b = sans_q.apply(nm)
                if lhs_a != want_a:
                    return CheckResult(False, {
                        "identity": "A-side module trace", "k": k, "pair": (e, f),
                        "lhs": lhs_a, "rhs": want_a})
                if lhs_b != want_b:
                    return CheckResult(False, {
                        "identity": "B-side module trace", "k": k, "pair": (e, f),
                        "lhs": lhs_b, "rhs": want_b})
    return CheckResult(True)


# ---------------------------------------------------------------------------
# the decision pipeline
# ---------------------------------------------------------------------------

def _phi_corrections(gma: Gma, families: LhdFamilies, order: int):
    """ell_k = phi^{-1} . Q''_k and ell'_k = phi . P''_k."""
    field = gma.field
    ctx = gma.ctx
    iso = compute_phi(gma)
    ell = [Matrix.zeros(field, ctx.A.dim, ctx.A.dim)]
    ellp = [Matrix.zeros(field, ctx.B.dim, ctx.B.dim)]
    for k in range(1, order + 1):
        ell.append(Matrix.from_columns(
            field, [iso.inverse(families.Qpp[k].column(e))
                    for e in range(ctx.A.dim)], rows=ctx.A.dim))
        ellp.append(Matrix.from_columns(
            field, [iso.apply(families.Ppp[k].column(e))
                    for e in range(ctx.B.dim)], rows=ctx.B.dim))
    return ell, ellp


def _search_corrections(gma: Gma, families: LhdFamilies, order: int):
    """Order-by-order affine search for center-valued corrections.

    At each order the constraints (the multiplicative identity for the
    corrected diagonal families, centrality of the paired cross values, and
    the module-product pairing identities) are affine in (ell_k, ell'_k)
    once lower orders are fixed; the canonical particular solution is taken
    greedily.  Returns (ell, ell_prime) or None when some order is
    infeasible.
    """
    field = gma.field
    ctx = gma.ctx
    A, B = ctx.A, ctx.B
    za = algebra_center(A)
    zb = algebra_center(B)
    zg_rows = center_gma(gma).subspace.constraint_matrix()
    n_u = A.dim * za.dim
    n_v = B.dim * zb.dim
    ell = [Matrix.zeros(field, A.dim, A.dim)]
    ellp = [Matrix.zeros(field, B.dim, B.dim)]
    sans_p = [Matrix.identity(field, A.dim)]
    sans_q = [Matrix.identity(field, B.dim)]

    def correction_mats(vec):
        cols_a = []
        for e in range(A.dim):
            coeffs = vec[e * za.dim:(e + 1) * za.dim]
            col = [field.zero] * A.dim
            for c, basis_vec in zip(coeffs, za.basis):
                if c != 0:
                    col = [field.reduce(x + c * y) for x, y in zip(col, basis_vec)]
            cols_a.append(tuple(col))
        cols_b = []
        for e in range(B.dim):
            coeffs = vec[n_u + e * zb.dim: n_u + (e + 1) * zb.dim]
            col = [field.zero] * B.dim
            for c, basis_vec in zip(coeffs, zb.basis):
                if c != 0:
                    col = [field.reduce(x + c * y) for x, y in zip(col, basis_vec)]
            cols_b.append(tuple(col))
        return (Matrix.from_columns(field, cols_a, rows=A.dim),
                Matrix.from_columns(field, cols_b, rows=B.dim))

    def residuals(k, ell_k, ellp_k):
        out = []
        pk = families.P[k].sub(ell_k)
        qk = families.Q[k].sub(ellp_k)
        for alg, fam_list, cand in ((A, sans_p, pk), (B, sans_q, qk)):
            seq_k = fam_list + [cand]
            for e in range(alg.dim):
                for f in range(alg.dim):
                    prod = alg.tensor[e][f]
                    lhs = cand.apply(prod)
                    rhs = [field.zero] * alg.dim
                    for i in range(k + 1):
                        u = seq_k[i].column(e)
                        v = seq_k[k - i].column(f)
                        term = alg.mul(u, v)
                        rhs = [x + y for x, y in zip(rhs, term)]
                    out.extend(field.reduce(x - y) for x, y in zip(lhs, rhs))
        for e in range(A.dim):
            g = gma.assemble(ell_k.column(e), ctx.M.zero(), ctx.N.zero(),
                             families.Qpp[k].column(e))
            out.extend(zg_rows.apply(g))
        for e in range(B.dim):
            g = gma.assemble(families.Ppp[k].column(e), ctx.M.zero(),
                             ctx.N.zero(), ellp_k.column(e))
            out.extend(zg_rows.apply(g))
        for e in range(ctx.M.dim):
            m = ctx.M.basis_vector(e)
            for f in range(ctx.N.dim):
                n = ctx.N.basis_vector(f)
                mn = ctx.pair_mn(m, n)
                nm = ctx.pair_nm(n, m)
                out.extend(field.reduce(x - y) for x, y in
                           zip(ell_k.apply(mn), families.Ppp[k].apply(nm)))
                out.extend(field.reduce(x - y) for x, y in
                           zip(ellp_k.apply(nm), families.Qpp[k].apply(mn)))
        return out

    nvars = n_u + n_v
    for k in range(1, order + 1):
        zero_vec = (field.zero,) * nvars
        base = residuals(k, *correction_mats(zero_vec))
        columns = []
        for t in range(nvars):
            probe = list(zero_vec)
            probe[t] = field.one
            r = residuals(k, *correction_mats(tuple(probe)))
            columns.append(tuple(field.reduce(x - y) for x, y in zip(r, base)))
        mat = Matrix.from_columns(field, columns, rows=len(base))
        rhs = tuple(field.reduce(-x) for x in base)
        sol = solve(mat, rhs)
        if sol is None:
            return None
        ell_k, ellp_k = correction_mats(sol.particular)
        ell.append(ell_k)
        ellp.append(ellp_k)
        sans_p.append(families.P[k].sub(ell_k))
        sans_q.append(families.Q[k].sub(ellp_k))
    return ell, ellp


def decide_proper(seq: MapSequence, order: Optional[int] = None) -> Verdict:
    """Decide properness; PROPER verdicts carry an independently verified
    certificate, IMPROPER verdicts a re-checkable witness."""
    gma = seq.gma
    if order is None:
        order = seq.order
    res = verify_lhd(seq, order)
    if not res.ok:
        raise PropernessError(
            "sequence is not a Lie higher derivation up to the requested order",
            res.witness)
    seq = seq_truncate(seq, order)
    entries = extract_entries(seq)
    fam = lhd_families(entries, order, gma)
    res_a = check_a_prime(fam, order, gma)
    res_b = check_b_prime(fam, order, gma)
    weakly = faithfulness(gma).weakly_faithful

    def finish(ell, ellp, unknown_reason):
        cert = build_certificate(gma, order, entries, fam, ell, ellp)
        chk = verify_certificate(seq, cert.d, cert.tau, order, gma)
        if not chk.ok:
            return Verdict("UNKNOWN", reason=f"{unknown_reason}: {chk.witness}")
        cross = eq34_crosscheck(entries, fam, cert, order, gma)
        if not cross.ok:
            return Verdict("UNKNOWN", reason=f"{unknown_reason}: {cross.witness}")
        return Verdict("PROPER", certificate=cert)

    if weakly:
        if res_a.ok and res_b.ok:
            ell, ellp = _phi_corrections(gma, fam, order)
            return finish(ell, ellp,
                          "certificate construction failed verification")
        witness = res_a.witness if not res_a.ok else res_b.witness
        return Verdict("IMPROPER", witness=witness)
    if res_a.ok and res_b.ok:
        found = _search_corrections(gma, fam, order)
        if found is None:
            return Verdict("UNKNOWN", reason=(
                "projected-center criteria hold but no center-valued "
                "correction was found (gma is not weakly faithful)"))
        return finish(*found, unknown_reason=(
            "correction found but its certificate failed verification"))
    found = _search_corrections(gma, fam, order)
    if found is not None:
        verdict = finish(*found, unknown_reason=(
            "correction found but its certificate failed verification"))
        if verdict.status == "PROPER":
            return verdict
    return Verdict("UNKNOWN", reason=(
        "necessary conditions failed and the gma is not weakly faithful; "
        "the converse criterion is unavailable"))


# ---------------------------------------------------------------------------
# sufficiency report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SufficiencyReport:
    proj_a_equals_center_a: bool
    proj_b_equals_center_b: bool
    no_central_ideal_a: bool
    no_central_ideal_b: bool
    domain_a: Trivalent
    domain_b: Trivalent
    strongly_faithful_m: Trivalent
    strongly_faithful_n: Trivalent
    weakly_faithful: bool
    branch: Optional[str]
    guaranteed: bool


def check_sufficient(gma: Gma) -> SufficiencyReport:
    """Evaluate the sufficient criteria for every Lie higher derivation on
    this algebra being proper."""
    ctx = gma.ctx
    _, pi_a, pi_b = _center_projections(gma)
    proj_a_eq = pi_a == algebra_center(ctx.A)
    proj_b_eq = pi_b == algebra_center(ctx.B)
    no_ci_a = not has_nonzero_central_ideal(ctx.A)
    no_ci_b = not has_nonzero_central_ideal(ctx.B)
    dom_a = is_domain(ctx.A)
    dom_b = is_domain(ctx.B)
    rep = faithfulness(gma)
    branch = None
    if no_ci_a or no_ci_b:
        branch = "central-ideal"
    elif dom_a.is_yes and dom_b.is_yes:
        branch = "domain"
    elif rep.strongly_faithful_m.is_yes or rep.strongly_faithful_n.is_yes:
        branch = "strong-faithfulness"
    guaranteed = bool(rep.weakly_faithful and proj_a_eq and proj_b_eq and branch)
    return SufficiencyReport(
        proj_a_equals_center_a=proj_a_eq,
        proj_b_equals_center_b=proj_b_eq,
        no_central_ideal_a=no_ci_a,
        no_central_ideal_b=no_ci_b,
        domain_a=dom_a,
        domain_b=dom_b,
        strongly_faithful_m=rep.strongly_faithful_m,
        strongly_faithful_n=rep.strongly_faithful_n,
        weakly_faithful=rep.weakly_faithful,
        branch=branch,
        guaranteed=guaranteed,
    )
