from __future__ import annotations

import json
import subprocess
import sys

import pytest

from fppcert.cli import EXIT_CONFIG, EXIT_OK, EXIT_REFUTED, main
from fppcert.report import SCHEMA_VERSION, CertReport, Status


def run_cli(tmp_path, *args):
    out = tmp_path / "report.json"
    code = main([*args, "--report", str(out), "--quiet"])
    return code, json.loads(out.read_text())


@pytest.mark.parametrize("plane", ["mumford", "cmsz-a", "cmsz-b"])
def test_all_passes(tmp_path, plane):
    code, data = run_cli(tmp_path, "all", "--plane", plane)
    assert code == EXIT_OK
    assert data["summary"]["REFUTED"] == 0
    assert data["schema_version"] == SCHEMA_VERSION
    ids = [c["claim_id"] for c in data["claims"]]
    assert len(ids) == len(set(ids))


def test_negative_control_exits_one(tmp_path):
    code, data = run_cli(tmp_path, "lemma3", "--modulus", "1")
    assert code == EXIT_REFUTED
    claim = next(c for c in data["claims"] if c["claim_id"] == "lemma3.no_feasible_divisor")
    assert claim["status"] == "REFUTED"
    assert claim["statistics"]["feasible_pairs"] == 3130848


def test_cohomology_subcommand(tmp_path):
    code, data = run_cli(tmp_path, "cohomology")
    assert code == EXIT_OK
    claim = next(c for c in data["claims"] if c["claim_id"] == "cohomology.chi_consistency")
    assert claim["status"] == "VERIFIED"
    assert claim["statistics"]["table"]["4"]["trivial_torsion"] == [3, 0, 0]


@pytest.mark.parametrize(
    "args",
    [["padic", "--plane", "nope"], ["padic", "--precision", "2"], ["lemma3", "--jobs", "0"], ["bogus"]],
)
def test_config_errors(args, capsys):
    assert main(args) == EXIT_CONFIG


def test_report_body_is_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["all", "--report", str(a), "--quiet"]) == EXIT_OK
    assert main(["all", "--report", str(b), "--jobs", "2", "--quiet"]) == EXIT_OK
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    assert set(da["header"]) == {"generated_at", "elapsed_ms"}
    da.pop("header"), db.pop("header")
    assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


def test_witness_log_and_export(tmp_path):
    log = tmp_path / "w.jsonl"
    mats = tmp_path / "m.json"
    assert main(["lemma3", "--witness-log", str(log), "--export-matrices", str(mats), "--quiet"]) == 0
    lines = log.read_text().splitlines()
    assert len(lines) == 4767
    assert json.loads(mats.read_text())["planes"]["mumford"]["lift_generator"] == "rho"


def test_summary_table_printed(capsys):
    assert main(["fano"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "fano.conic_census" in out and "VERIFIED=5" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fppcert.cli", "hochschild", "--quiet"], capture_output=True
    )
    assert proc.returncode == 0


def test_report_rejects_duplicates():
    r = CertReport()
    r.add("x", "d", "a", True)
    with pytest.raises(ValueError):
        r.add("x", "d", "a", False)
    r.add("y", "d", "a", Status.ASSERTED)
    assert r.ok
    r.add("z", "d", "a", False)
    assert not r.ok
    assert r.counts() == {"VERIFIED": 1, "REFUTED": 1, "ASSERTED": 1, "SKIPPED": 0}
    other = CertReport()
    other.add("x", "d", "a", True)
    with pytest.raises(ValueError):
        r.extend(other)
