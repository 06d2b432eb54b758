"""Command-line interface: documents, reports, exit codes, determinism."""

import json
import os

import pytest

from gmader.cli import main
from gmader.docio import (
    DocumentError, document_sequence, document_to_gma, gma_to_document,
    instance_digest, load_document, save_document,
)
from gmader.gma import benkovic, full_matrix
from gmader.linalg import PrimeField, QQ
from gmader.mapseq import verify_lhd
import random
from gmader.sampling import random_proper_lhd


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_document_round_trip(tmp_path):
    g = full_matrix(PrimeField(5), 3)
    rng = random.Random(1)
    seq = random_proper_lhd(g, 2, rng)
    doc = gma_to_document(g, sequence=seq, sequence_kind="lhd")
    path = tmp_path / "inst.json"
    save_document(str(path), doc)
    doc2 = load_document(str(path))
    assert instance_digest(doc) == instance_digest(doc2)
    g2 = document_to_gma(doc2)
    assert g2.algebra == g.algebra
    seq2 = document_sequence(doc2, g2)
    assert seq2.mats == seq.mats
    assert verify_lhd(seq2).ok


def test_document_errors():
    with pytest.raises(DocumentError):
        document_to_gma({"schema_version": "bogus"})
    doc = gma_to_document(full_matrix(QQ, 2))
    doc["field"] = {"kind": "Fp", "p": 2}
    with pytest.raises(DocumentError):
        document_to_gma(doc)


def test_fixture_validate_props_flow(tmp_path, capsys):
    path = str(tmp_path / "benkovic.json")
    code, out, _ = run(capsys, "fixture", "benkovic", "--out", path)
    assert code == 0
    code, out, _ = run(capsys, "validate", path)
    assert code == 0
    assert "valid" in out
    code, out, _ = run(capsys, "props", path, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["trivial"] is True
    assert report["faithfulness"]["weakly_faithful"] is True
    assert report["proj_a_equals_center_a"] is False


def test_fixture_full_matrix_and_sufficient(tmp_path, capsys):
    path = str(tmp_path / "fm.json")
    code, _, _ = run(capsys, "fixture", "full-matrix", "--n", "3", "--p", "5",
                     "--out", path)
    assert code == 0
    code, out, _ = run(capsys, "sufficient", path, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["guaranteed"] is True
    assert report["branch"] == "central-ideal"


def test_benkovic_decide_exit_codes(tmp_path, capsys):
    path = str(tmp_path / "b.json")
    run(capsys, "fixture", "benkovic", "--out", path)
    # the embedded displayed map at order 1 is improper
    code, out, _ = run(capsys, "decide", path)
    assert code == 1
    assert "IMPROPER" in out
    # ordinary extension to order 3 stays improper
    gen_path = str(tmp_path / "b3.json")
    code, _, _ = run(capsys, "gen", path, "--gen", "ordinary", "--order", "3",
                     "--out", gen_path)
    assert code == 0
    code, out, _ = run(capsys, "verify", gen_path, "--kind", "lhd")
    assert code == 0
    code, out, _ = run(capsys, "decide", gen_path)
    assert code == 1


def test_synth_decide_proper_exit_zero(tmp_path, capsys):
    path = str(tmp_path / "fm.json")
    run(capsys, "fixture", "full-matrix", "--n", "3", "--p", "5", "--out", path)
    gen_path = str(tmp_path / "fm-lhd.json")
    code, _, _ = run(capsys, "gen", path, "--gen", "synth-lhd", "--order", "2",
                     "--seed", "9", "--out", gen_path)
    assert code == 0
    code, out, _ = run(capsys, "decide", gen_path, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "PROPER"
    assert "certificate" in report


def test_zero_like_decide_on_inner_hd(tmp_path, capsys):
    path = str(tmp_path / "m2.json")
    run(capsys, "fixture", "peirce-m2", "--out", path)
    gen_path = str(tmp_path / "m2-hd.json")
    code, _, _ = run(capsys, "gen", path, "--gen", "inner", "--order", "3",
                     "--seed", "4", "--out", gen_path)
    assert code == 0
    code, out, _ = run(capsys, "verify", gen_path, "--kind", "hd", "--json")
    assert code == 0
    assert json.loads(out)["identity_ok"] is True
    code, _, _ = run(capsys, "decide", gen_path)
    assert code == 0


def test_gen_reports_are_deterministic(tmp_path, capsys):
    path = str(tmp_path / "m2.json")
    run(capsys, "fixture", "peirce-m2", "--p", "7", "--out", path)
    out1 = str(tmp_path / "a.json")
    out2 = str(tmp_path / "b.json")
    run(capsys, "gen", path, "--gen", "synth-lhd", "--order", "2", "--seed",
        "11", "--out", out1)
    run(capsys, "gen", path, "--gen", "synth-lhd", "--order", "2", "--seed",
        "11", "--out", out2)
    assert open(out1).read() == open(out2).read()
    # decide reports byte-identical modulo timing
    code1, rep1, _ = run(capsys, "decide", out1, "--json")
    code2, rep2, _ = run(capsys, "decide", out2, "--json")
    d1, d2 = json.loads(rep1), json.loads(rep2)
    d1.pop("timing_ms"), d2.pop("timing_ms")
    assert code1 == code2 and d1 == d2


def test_gma_seed_env_override(tmp_path, capsys, monkeypatch):
    path = str(tmp_path / "m2.json")
    run(capsys, "fixture", "peirce-m2", "--p", "7", "--out", path)
    out1 = str(tmp_path / "a.json")
    out2 = str(tmp_path / "b.json")
    monkeypatch.setenv("GMA_SEED", "99")
    run(capsys, "gen", path, "--gen", "synth-lhd", "--order", "2", "--seed",
        "11", "--out", out1)
    monkeypatch.delenv("GMA_SEED")
    run(capsys, "gen", path, "--gen", "synth-lhd", "--order", "2", "--seed",
        "99", "--out", out2)
    assert json.load(open(out1)) == json.load(open(out2))


def test_validate_reports_broken_instance(tmp_path, capsys):
    path = str(tmp_path / "m2.json")
    run(capsys, "fixture", "peirce-m2", "--out", path)
    doc = load_document(path)
    doc["algebra_a"]["unit"] = ["0"]  # break the unit axiom
    save_document(path, doc)
    code, out, _ = run(capsys, "validate", path)
    assert code == 1
    assert "violation" in out


def test_error_exit_code_is_four(tmp_path, capsys):
    code, _, err = run(capsys, "decide", str(tmp_path / "missing.json"))
    assert code == 4
    path = str(tmp_path / "m2.json")
    run(capsys, "fixture", "peirce-m2", "--out", path)
    code, _, err = run(capsys, "decide", path)  # no embedded sequence
    assert code == 4


def test_decide_zero_sequence_document(tmp_path, capsys):
    from gmader.mapseq import zero_sequence
    g = full_matrix(QQ, 2)
    doc = gma_to_document(g, sequence=zero_sequence(g, 2), sequence_kind="lhd")
    path = str(tmp_path / "zero.json")
    save_document(path, doc)
    code, out, _ = run(capsys, "decide", path, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "PROPER"
    zeros = [["0", "0", "0", "0"]] * 4
    assert all(m == zeros for m in report["certificate"]["tau_maps"])
    assert all(m == zeros for m in report["certificate"]["d_maps"][1:])


def test_decide_unknown_exit_code(tmp_path, capsys):
    from gmader.sampling import benkovic_dead_end, benkovic_dead_end_map
    from gmader.mapseq import MapSequence
    from gmader.linalg import Matrix
    g = benkovic_dead_end(QQ)
    seq = MapSequence(g, [Matrix.identity(QQ, g.dim), benkovic_dead_end_map(g)])
    doc = gma_to_document(g, sequence=seq, sequence_kind="lhd")
    path = str(tmp_path / "dead.json")
    save_document(path, doc)
    code, out, _ = run(capsys, "decide", path, "--json")
    assert code == 2
    assert json.loads(out)["verdict"] == "UNKNOWN"


def test_props_reports_phi_for_weakly_faithful(tmp_path, capsys):
    path = str(tmp_path / "b.json")
    run(capsys, "fixture", "benkovic", "--out", path)
    code, out, _ = run(capsys, "props", path, "--json")
    report = json.loads(out)
    assert report["phi"] is not None
    assert report["phi"]["domain_dim"] == 1


def test_verify_order_beyond_embedded_is_an_error(tmp_path, capsys):
    path = str(tmp_path / "b.json")
    run(capsys, "fixture", "benkovic", "--out", path)
    code, _, err = run(capsys, "verify", path, "--order", "5")
    assert code == 4


def test_module_entry_point(tmp_path):
    import subprocess, sys
    path = str(tmp_path / "m2.json")
    proc = subprocess.run(
        [sys.executable, "-m", "gmader", "fixture", "peirce-m2", "--out", path],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "wrote" in proc.stdout
