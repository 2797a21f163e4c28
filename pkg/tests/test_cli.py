import csv
import io
import json

import numpy as np
import pytest

from rsp_coherence import cli, harness
from rsp_coherence.coherence import payoff
from rsp_coherence.noise import rho_noise


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, val = line[2:].split("=", 1)
            meta[key] = json.loads(val)
        else:
            body.append(line)
    return meta, list(csv.DictReader(io.StringIO("\n".join(body))))


def test_table1_exact_is_bit_for_bit(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0
    meta, rows = parse_csv(out)
    assert meta["command"] == "table1" and meta["shots"] is None
    rho = rho_noise()
    assert len(rows) == 8
    for row in rows:
        assert float(row["P"]) == payoff(rho, np.deg2rad(float(row["phi_deg"])))
        assert float(row["dW"]) == pytest.approx(0.35, abs=1e-12)


def test_same_seed_same_bytes(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.main(["sweep-phi", "--shots", "1000", "--seed", "9", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_different_seed_differs(capsys):
    _, a, _ = run(capsys, "table1", "--shots", "--seed", "1")
    _, b, _ = run(capsys, "table1", "--shots", "--seed", "2")
    assert a != b
    meta, rows = parse_csv(a)
    assert meta["shots"] == 10_000 and meta["generator"] == "PCG64"
    assert "est_W_BA" in rows[0] and "se_W_BA" in rows[0]


def test_sweep_phi_hadamard(capsys):
    code, out, _ = run(capsys, "sweep-phi", "--n", "8", "--q", "0", "--discord")
    assert code == 0
    meta, rows = parse_csv(out)
    assert meta["cqb_equator_avg_q0"] == pytest.approx(0.35 * (1 + np.sqrt(2)) / 4, abs=1e-12)
    by_deg = {float(r["phi_deg"]): r for r in rows}
    assert by_deg[90.0]["established_q0"] == "false" and by_deg[90.0]["dW_gt_q0"] == "NA"
    assert by_deg[180.0]["dW_lt_q0"] != "NA"
    assert all(r["D"] == rows[0]["D"] for r in rows)


def test_sweep_phi_singlet_metadata(capsys):
    _, out, _ = run(capsys, "sweep-phi", "--state", "psi-minus", "--channel", "u-dagger")
    meta, rows = parse_csv(out)
    assert meta["reported_source_fidelity"] == pytest.approx(0.9917)
    assert all(float(r["P"]) == pytest.approx(0.5, abs=1e-12) for r in rows)


def test_sweep_noise_json(capsys):
    code, out, _ = run(capsys, "sweep-noise", "--p-step", "0.25", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 25
    for row in doc["rows"]:
        if row["admissible"]:
            assert row["dW"] == pytest.approx(row["closed_form"], abs=1e-12)
        else:
            assert row["dW"] is None and row["D"] is None


def test_verify_passes_and_fault_fails(capsys):
    code, out, _ = run(capsys, "verify", "--shots", "100000")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "--shots", "100000", "--inject-fault", "wrong-correction-rule")
    report = json.loads(out)
    assert code == 1 and not report["passed"]
    failed = {s["name"] for s in report["suites"] if not s["passed"]}
    assert "equivalence" in failed


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep-noise", "--p-step", "0"],
        ["sweep-phi", "--n", "1"],
        ["table1", "--p1", "0.8", "--p2", "0.5"],
        ["table1", "--shots", "0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["table1", "--state", "bogus"])
    assert exc.value.code == 2


def test_estimated_verdict_needs_significance():
    est = harness.estimated_verdict(harness.Estimate(0.01, 0.05), harness.Estimate(0.0, 0.05))
    assert est == (None, None, False)
    gt, lt, ok = harness.estimated_verdict(harness.Estimate(0.3, 0.01), harness.Estimate(0.0, 0.01))
    assert ok and lt is None and gt == pytest.approx(0.3)
