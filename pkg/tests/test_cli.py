from __future__ import annotations

import json
import os
import sys

import pytest

from gpmorita.cli import main

FIX = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fx(name):
    return os.path.join(FIX, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_validate_ok(capsys):
    code, out = run(capsys, "validate", fx("triangular.json"))
    assert code == 0


def test_validate_rejects_malformed(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["validate", str(p)]) == 3


def test_validate_rejects_unresolved_names(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"field": "Q", "modules":
                             {"X": {"algebra": "nope", "dim": 0, "acts": []}}}))
    assert main(["validate", str(p)]) == 3


def test_corrupted_psi_fails_before_build(tmp_path, capsys):
    doc = json.load(open(fx("glued5.json")))
    # corrupt psi: send n (x) m to 1 instead of into the ideal
    doc["maps"]["psi"]["mat"]["entries"] = [1, 0]
    p = tmp_path / "corrupt.json"
    p.write_text(json.dumps(doc))
    assert main(["build-ring", str(p), "--context", "ctx"]) == 1


def test_build_ring_and_classify(capsys):
    code, out = run(capsys, "build-ring", fx("glued5.json"), "--context", "ctx",
                    "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["ring_dim"] == 5
    code, out = run(capsys, "classify", fx("triangular.json"), "--context",
                    "ctx", "--json")
    assert code == 0
    rep = json.loads(out)
    dims = sorted((p["x_dim"], p["y_dim"]) for p in rep["projectives"])
    assert dims == [(1, 0), (1, 1)]


def test_check_gp_exit_codes(capsys):
    assert run(capsys, "check-gp", fx("triangular.json"), "--extension", "ext",
               "--context", "ctx", "--quadruple", "P2")[0] == 0
    code, out = run(capsys, "check-gp", fx("triangular.json"), "--extension",
                    "ext", "--context", "ctx", "--quadruple", "S2", "--json")
    assert code == 1
    rep = json.loads(out)
    assert rep["failing"] == ["iso_b2"]


def test_certify_gp_on_quadruple(capsys):
    code, out = run(capsys, "certify-gp", fx("two_cycle.json"), "--context",
                    "ctx", "--quadruple", "S1", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "gp"


def test_certify_gp_period_bound_in_report(capsys):
    code, out = run(capsys, "certify-gp", fx("dual_numbers.json"), "--module",
                    "S", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["certificate"]["period"] <= 2


def test_build_resolution(capsys):
    code, out = run(capsys, "build-resolution", fx("triangular.json"),
                    "--extension", "ext", "--context", "ctx", "--quadruple",
                    "P2", "--window", "4", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["exact"] and rep["totally_exact"] and rep["kernel_is_module"]


def test_build_resolution_fails_on_s2(capsys):
    code, out = run(capsys, "build-resolution", fx("triangular.json"),
                    "--extension", "ext", "--context", "ctx", "--quadruple",
                    "S2")
    assert code == 1


def test_check_compat_proof_and_witness(capsys):
    # over the triangular fixture Lambda = A, so N is already corner-sided
    code, out = run(capsys, "check-compat", fx("triangular.json"),
                    "--bimodule", "N", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["proof_grade"]
    code, out = run(capsys, "check-compat", fx("dual_numbers.json"),
                    "--bimodule", "S_bim", "--right-tests", "S_window",
                    "--json")
    assert code == 1
    rep = json.loads(out)
    assert rep["reason"] == "tor_witness"
    assert rep["witness"]["test_name"] == "S_window"


def test_verify_report_checks_compat_witness(tmp_path, capsys):
    code, out = run(capsys, "check-compat", fx("dual_numbers.json"),
                    "--bimodule", "S_bim", "--right-tests", "S_window",
                    "--json")
    rep_path = tmp_path / "compat.json"
    rep_path.write_text(out)
    code, out = run(capsys, "verify-report", fx("dual_numbers.json"),
                    "--report", str(rep_path))
    assert code == 0


def test_verify_report_on_certificates(tmp_path, capsys):
    code, out = run(capsys, "certify-gp", fx("dual_numbers.json"), "--module",
                    "R", "--json")
    rep_path = tmp_path / "cert.json"
    rep_path.write_text(out)
    assert run(capsys, "verify-report", fx("dual_numbers.json"), "--report",
               str(rep_path))[0] == 0
    # tampering with the window must be detected
    rep = json.loads(rep_path.read_text())
    rep["certificate"]["window"]["diffs"][0]["entries"] = \
        [0] * len(rep["certificate"]["window"]["diffs"][0]["entries"])
    rep_path.write_text(json.dumps(rep))
    assert run(capsys, "verify-report", fx("dual_numbers.json"), "--report",
               str(rep_path))[0] == 1


def test_nc_tensor_build_and_iso(capsys):
    code, out = run(capsys, "nc-tensor", "build", fx("two_cycle.json"),
                    "--context", "ctx", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["ring_dim"] == 5 and rep["exact_context"]["exact"]
    code, out = run(capsys, "nc-tensor", "iso", fx("two_cycle.json"),
                    "--context", "ctx", "--json")
    assert code == 0


def test_nc_tensor_check_mirrored_criterion(capsys):
    code, out = run(capsys, "nc-tensor", "check", fx("nc_phi.json"),
                    "--context", "ctx", "--extension", "extB", "--quadruple",
                    "PB", "--json")
    assert code == 0
    code, out = run(capsys, "nc-tensor", "check", fx("nc_phi.json"),
                    "--context", "ctx", "--extension", "extB", "--quadruple",
                    "SB", "--json")
    assert code == 1
    rep = json.loads(out)
    assert "iso_b1" in rep["failing"]


def test_audit_exit_codes(capsys):
    code, out = run(capsys, "audit", fx("triangular.json"), "--extension",
                    "ext", "--context", "ctx", "--quadruples", "P1", "P2",
                    "S2", "--json")
    assert code == 0
    rep = json.loads(out)
    assert all(e["classification"] == "consistent" for e in rep["entries"])
    code, out = run(capsys, "audit", fx("two_cycle.json"), "--extension",
                    "ext", "--context", "ctx", "--quadruples", "S1", "S2",
                    "--json")
    assert code == 0
    rep = json.loads(out)
    assert all(e["classification"] == "expected_divergence"
               for e in rep["entries"])


def test_reports_are_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out = run(capsys, "audit", fx("two_cycle.json"), "--extension",
                        "ext", "--context", "ctx", "--quadruples", "S1", "S2",
                        "--seed", "7", "--json")
        outs.append(out)
    assert outs[0] == outs[1]
    outs = []
    for _ in range(2):
        code, out = run(capsys, "certify-gp", fx("dual_numbers.json"),
                        "--module", "S", "--seed", "3", "--json")
        outs.append(out)
    assert outs[0] == outs[1]
