"""Command-line front end.

Commands operate on JSON instance documents and print human-readable
reports (or machine-readable JSON with --json).  The decide command maps
its verdict onto the exit code: 0 PROPER, 1 IMPROPER, 2 UNKNOWN; every
command uses exit code 4 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from .linalg import PrimeField, QQ
from .algebra import scalar_field_algebra
from .docio import (
    DocumentError, document_sequence, document_to_context, document_to_gma,
    gma_to_document, instance_digest, load_document, matrix_json,
    save_document,
)
from .gma import (
    GmaError, benkovic, benkovic_improper_map, build_gma, center_gma,
    compute_phi, faithfulness, full_matrix, is_trivial, regular_bimodule,
    triangular,
)
from .algebra import center as algebra_center, has_nonzero_central_ideal, is_domain
from .mapseq import (
    MapSequenceError, extract_entries, ordinary_sequence, seq_truncate,
    verify_hd, verify_lhd,
)
from .properness import PropernessError, check_sufficient, decide_proper
from .sampling import random_inner_hd, random_proper_lhd
from .structure import check_hd_conditions, check_lhd_conditions

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 4


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _fmt_vec(field, v):
    return "(" + ", ".join(field.format(x) for x in v) + ")"


def _witness_json(field, witness):
    if witness is None:
        return None
    out = {}
    for key, val in witness.items():
        if isinstance(val, tuple) and val and not isinstance(val[0], (tuple, list)):
            try:
                out[key] = [field.format(x) for x in val]
                continue
            except (TypeError, ValueError):
                pass
        if isinstance(val, tuple):
            out[key] = list(val)
        else:
            out[key] = val
    return out


def _emit(report: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _tri_str(t):
    return t.status


def _load(path):
    doc = load_document(path)
    gma = document_to_gma(doc)
    return doc, gma


def cmd_validate(args) -> int:
    doc = load_document(args.path)
    report = {"schema_version": "gma-report/1", "command": "validate",
              "instance_digest": instance_digest(doc)}
    t0 = time.monotonic()
    try:
        ctx = document_to_context(doc)
    except DocumentError as exc:
        report["ok"] = False
        report["violations"] = [str(exc)]
        _emit(report, args.json, [f"parse error: {exc}"])
        return EXIT_FAIL
    violations = ctx.validate()
    seq_error = None
    if not violations:
        gma = build_gma(ctx, check=False)
        try:
            document_sequence(doc, gma)
        except DocumentError as exc:
            seq_error = str(exc)
    report["ok"] = not violations and seq_error is None
    report["violations"] = violations + ([seq_error] if seq_error else [])
    report["timing_ms"] = int(1000 * (time.monotonic() - t0))
    lines = (["instance valid"] if report["ok"]
             else [f"violation: {v}" for v in report["violations"]])
    _emit(report, args.json, lines)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_props(args) -> int:
    doc, gma = _load(args.path)
    t0 = time.monotonic()
    ctx = gma.ctx
    field = gma.field
    info = center_gma(gma)
    rep = faithfulness(gma)
    za = algebra_center(ctx.A)
    zb = algebra_center(ctx.B)
    from .linalg import span
    pi_a = span(field, ctx.A.dim, [a for a, _ in info.pairs])
    pi_b = span(field, ctx.B.dim, [b for _, b in info.pairs])
    phi_data = None
    if rep.weakly_faithful:
        iso = compute_phi(gma)
        phi_data = {
            "domain_dim": iso.domain.dim,
            "pairs": [[_fmt_vec(field, a) for a in iso.domain.basis],
                      [_fmt_vec(field, iso.apply(a)) for a in iso.domain.basis]],
        }
    dom_a = is_domain(ctx.A)
    dom_b = is_domain(ctx.B)
    report = {
        "schema_version": "gma-report/1",
        "command": "props",
        "instance_digest": instance_digest(doc),
        "dim": gma.dim,
        "blocks": {"A": ctx.A.dim, "M": ctx.M.dim, "N": ctx.N.dim, "B": ctx.B.dim},
        "center_dim": info.subspace.dim,
        "center_a_dim": za.dim,
        "center_b_dim": zb.dim,
        "proj_a_equals_center_a": pi_a == za,
        "proj_b_equals_center_b": pi_b == zb,
        "faithfulness": {
            "m_left": rep.m_left, "m_right": rep.m_right,
            "n_left": rep.n_left, "n_right": rep.n_right,
            "m_faithful": rep.m_faithful, "n_faithful": rep.n_faithful,
            "strongly_faithful_m": _tri_str(rep.strongly_faithful_m),
            "strongly_faithful_n": _tri_str(rep.strongly_faithful_n),
            "strong_m_clause_a": _tri_str(rep.strong_m_clause_a),
            "strong_m_clause_b": _tri_str(rep.strong_m_clause_b),
            "strong_n_clause_a": _tri_str(rep.strong_n_clause_a),
            "strong_n_clause_b": _tri_str(rep.strong_n_clause_b),
            "weakly_faithful": rep.weakly_faithful,
        },
        "phi": phi_data,
        "central_ideals": {
            "a_has_nonzero_central_ideal": has_nonzero_central_ideal(ctx.A),
            "b_has_nonzero_central_ideal": has_nonzero_central_ideal(ctx.B),
        },
        "domains": {"A": _tri_str(dom_a), "B": _tri_str(dom_b)},
        "trivial": is_trivial(gma),
    }
    report["timing_ms"] = int(1000 * (time.monotonic() - t0))
    lines = [
        f"dim(G) = {gma.dim} (A={ctx.A.dim}, M={ctx.M.dim}, N={ctx.N.dim}, B={ctx.B.dim})",
        f"dim Z(G) = {info.subspace.dim}; pi_A(Z)=Z(A): "
        f"{report['proj_a_equals_center_a']}; pi_B(Z)=Z(B): "
        f"{report['proj_b_equals_center_b']}",
        f"faithfulness: M {'faithful' if rep.m_faithful else 'not faithful'}, "
        f"N {'faithful' if rep.n_faithful else 'not faithful'}, "
        f"weakly faithful: {rep.weakly_faithful}",
        f"strongly faithful: M {_tri_str(rep.strongly_faithful_m)}, "
        f"N {_tri_str(rep.strongly_faithful_n)}",
        f"nonzero central ideal: A "
        f"{report['central_ideals']['a_has_nonzero_central_ideal']}, "
        f"B {report['central_ideals']['b_has_nonzero_central_ideal']}",
        f"domain: A {_tri_str(dom_a)}, B {_tri_str(dom_b)}",
        f"trivial pairings: {report['trivial']}",
    ]
    if phi_data:
        lines.append(f"phi defined on a {phi_data['domain_dim']}-dimensional domain")
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc, gma = _load(args.path)
    seq = document_sequence(doc, gma)
    if seq is None:
        raise CliError("document carries no sequence")
    order = args.order if args.order is not None else seq.order
    if order > seq.order:
        raise CliError(f"--order {order} exceeds embedded order {seq.order}")
    t0 = time.monotonic()
    field = gma.field
    if args.kind == "hd":
        res = verify_hd(seq, order)
        conditions = check_hd_conditions(extract_entries(seq_truncate(seq, order)),
                                         order, gma)
    else:
        res = verify_lhd(seq, order)
        conditions = check_lhd_conditions(extract_entries(seq_truncate(seq, order)),
                                          order, gma)
    report = {
        "schema_version": "gma-report/1",
        "command": "verify",
        "kind": args.kind,
        "order": order,
        "instance_digest": instance_digest(doc),
        "identity_ok": res.ok,
        "identity_witness": _witness_json(field, res.witness),
        "conditions_ok": conditions.ok,
        "violations": [
            {"condition": v.condition, "k": v.k, "where": list(v.where),
             "detail": v.detail}
            for v in conditions.violations],
        "diagnostics": conditions.diagnostics,
    }
    report["timing_ms"] = int(1000 * (time.monotonic() - t0))
    lines = [f"{args.kind} identity up to order {order}: "
             f"{'PASS' if res.ok else 'FAIL'}"]
    if not res.ok:
        lines.append(f"  witness: k={res.witness['k']} pair={res.witness['pair']}")
    lines.append(f"structure conditions: "
                 f"{'PASS' if conditions.ok else 'FAIL'} "
                 f"({len(conditions.violations)} violations)")
    for v in conditions.violations[:10]:
        lines.append(f"  {v.condition} at k={v.k} {v.where}: {v.detail}")
    _emit(report, args.json, lines)
    return EXIT_OK if (res.ok and conditions.ok) else EXIT_FAIL


def cmd_decide(args) -> int:
    doc, gma = _load(args.path)
    seq = document_sequence(doc, gma)
    if seq is None:
        raise CliError("document carries no sequence")
    order = args.order if args.order is not None else seq.order
    t0 = time.monotonic()
    field = gma.field
    try:
        verdict = decide_proper(seq, order)
    except PropernessError as exc:
        raise CliError(f"{exc} (witness: {exc.witness})")
    report = {
        "schema_version": "gma-report/1",
        "command": "decide",
        "order": order,
        "instance_digest": instance_digest(doc),
        "verdict": verdict.status,
        "witness": _witness_json(field, verdict.witness),
        "reason": verdict.reason,
    }
    if verdict.certificate is not None:
        cert = verdict.certificate
        report["certificate"] = {
            "d_maps": [matrix_json(field, m) for m in cert.d.mats],
            "tau_maps": [matrix_json(field, m) for m in cert.tau.mats],
            "ell": [matrix_json(field, m) for m in cert.ell],
            "ell_prime": [matrix_json(field, m) for m in cert.ell_prime],
        }
    report["timing_ms"] = int(1000 * (time.monotonic() - t0))
    lines = [f"verdict: {verdict.status}"]
    if verdict.witness:
        lines.append(f"  witness: {report['witness']}")
    if verdict.reason:
        lines.append(f"  reason: {verdict.reason}")
    if verdict.certificate is not None:
        lines.append("  certificate verified (D is a higher derivation, tau is "
                     "center-valued and kills commutators, L = D + tau)")
    _emit(report, args.json, lines)
    return {"PROPER": EXIT_OK, "IMPROPER": EXIT_FAIL,
            "UNKNOWN": EXIT_UNKNOWN}[verdict.status]


def cmd_sufficient(args) -> int:
    doc, gma = _load(args.path)
    t0 = time.monotonic()
    rep = check_sufficient(gma)
    report = {
        "schema_version": "gma-report/1",
        "command": "sufficient",
        "instance_digest": instance_digest(doc),
        "proj_a_equals_center_a": rep.proj_a_equals_center_a,
        "proj_b_equals_center_b": rep.proj_b_equals_center_b,
        "no_central_ideal_a": rep.no_central_ideal_a,
        "no_central_ideal_b": rep.no_central_ideal_b,
        "domain_a": rep.domain_a.status,
        "domain_b": rep.domain_b.status,
        "strongly_faithful_m": rep.strongly_faithful_m.status,
        "strongly_faithful_n": rep.strongly_faithful_n.status,
        "weakly_faithful": rep.weakly_faithful,
        "branch": rep.branch,
        "guaranteed": rep.guaranteed,
    }
    report["timing_ms"] = int(1000 * (time.monotonic() - t0))
    lines = [
        f"(I) center projections match: A {rep.proj_a_equals_center_a}, "
        f"B {rep.proj_b_equals_center_b}",
        f"(II.i) no nonzero central ideal: A {rep.no_central_ideal_a}, "
        f"B {rep.no_central_ideal_b}",
        f"(II.ii) domain: A {rep.domain_a.status}, B {rep.domain_b.status}",
        f"(II.iii) strongly faithful: M {rep.strongly_faithful_m.status}, "
        f"N {rep.strongly_faithful_n.status}",
        f"weakly faithful: {rep.weakly_faithful}",
        ("conclusion: every Lie higher derivation is proper "
         f"(via the {rep.branch} branch)") if rep.guaranteed
        else "conclusion: not guaranteed by these criteria",
    ]
    _emit(report, args.json, lines)
    return EXIT_OK


def cmd_gen(args) -> int:
    doc, gma = _load(args.path)
    seed = os.environ.get("GMA_SEED")
    seed = int(seed) if seed is not None else args.seed
    rng = random.Random(seed)
    order = args.order
    if args.gen == "ordinary":
        seq = document_sequence(doc, gma)
        if seq is None or seq.order < 1:
            raise CliError("--gen ordinary needs an embedded sequence of order >= 1")
        base = seq.mats[1]
        probe = verify_lhd(seq_truncate(seq, 1), 1)
        if not probe.ok:
            raise CliError("embedded order-1 map is not a Lie derivation")
        out_seq = ordinary_sequence(gma, base, order)
        kind = "lhd"
    elif args.gen == "inner":
        out_seq = random_inner_hd(gma, order, rng)
        kind = "hd"
    else:  # synth-lhd
        out_seq = random_proper_lhd(gma, order, rng)
        kind = "lhd"
    out_doc = gma_to_document(
        gma, sequence=out_seq, sequence_kind=kind,
        fixture=doc.get("fixture"),
        meta={"generator": args.gen, "seed": seed, "order": order})
    save_document(args.out, out_doc)
    report = {
        "schema_version": "gma-report/1",
        "command": "gen",
        "generator": args.gen,
        "order": order,
        "seed": seed,
        "out": args.out,
        "instance_digest": instance_digest(out_doc),
    }
    _emit(report, args.json, [f"wrote {args.out} ({args.gen}, order {order}, "
                              f"seed {seed})"])
    return EXIT_OK


def _fixture_gma(name: str, field, n: int):
    if name == "benkovic":
        gma = benkovic(field)
        seq = None
        base = benkovic_improper_map(gma)
        from .mapseq import MapSequence
        from .linalg import Matrix
        seq = MapSequence(gma, [Matrix.identity(field, gma.dim), base])
        return gma, seq, "lhd"
    if name == "full-matrix":
        return full_matrix(field, n), None, None
    if name == "peirce-m2":
        return full_matrix(field, 2), None, None
    if name == "triangular":
        a = scalar_field_algebra(field)
        m = regular_bimodule(a)
        return triangular(a, m, a), None, None
    raise CliError(f"unknown fixture {name!r}")


def cmd_fixture(args) -> int:
    field = PrimeField(args.p) if args.p else QQ
    if field.char == 2:
        raise CliError("characteristic 2 is not supported")
    gma, seq, kind = _fixture_gma(args.name, field, args.n)
    doc = gma_to_document(gma, sequence=seq, sequence_kind=kind,
                          fixture=args.name)
    save_document(args.out, doc)
    report = {
        "schema_version": "gma-report/1",
        "command": "fixture",
        "fixture": args.name,
        "out": args.out,
        "instance_digest": instance_digest(doc),
    }
    _emit(report, args.json, [f"wrote {args.out} ({args.name}, dim {gma.dim})"])
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="gmader",
                     description="Exact computations with generalized matrix "
                                 "algebras and (Lie) higher derivations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true",
                       help="machine-readable report")
        return p

    p = add("validate", cmd_validate, "check instance invariants")
    p.add_argument("path")
    p = add("props", cmd_props, "centers, projections, faithfulness, predicates")
    p.add_argument("path")
    p = add("verify", cmd_verify, "verify the embedded sequence")
    p.add_argument("path")
    p.add_argument("--kind", choices=("hd", "lhd"), default="lhd")
    p.add_argument("--order", type=int, default=None)
    p = add("decide", cmd_decide, "decide properness of the embedded sequence")
    p.add_argument("path")
    p.add_argument("--order", type=int, default=None)
    p = add("sufficient", cmd_sufficient, "evaluate the sufficiency criteria")
    p.add_argument("path")
    p = add("gen", cmd_gen, "generate a sequence into a new document")
    p.add_argument("path")
    p.add_argument("--gen", choices=("ordinary", "inner", "synth-lhd"),
                   required=True)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p = add("fixture", cmd_fixture, "write a named fixture instance")
    p.add_argument("name", choices=("benkovic", "full-matrix", "triangular",
                                    "peirce-m2"))
    p.add_argument("--p", type=int, default=None,
                   help="odd prime modulus (default: rationals)")
    p.add_argument("--n", type=int, default=3, help="size for full-matrix")
    p.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, DocumentError, GmaError, MapSequenceError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
