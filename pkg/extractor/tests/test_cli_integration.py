"""End-to-end: extractor CLI produces a KSE file that the analysis CLI
consumes without error. The two packages share nothing but the format."""

import json
import shutil
import subprocess

import pytest

from kse_extractor.cli import main

KSTAR = shutil.which("kstar")


def test_cli_writes_kse_and_sidecar(tmp_path):
    out = tmp_path / "feats.kse"
    code = main(
        ["--model", "mobilenet_v3_small", "--dataset", "fake:n=32,classes=4,size=32",
         "--out", str(out), "--batch-size", "16", "--limit", "32"]
    )
    assert code == 0
    assert out.exists() and (tmp_path / "feats.kse.meta.json").exists()


def test_cli_error_codes(tmp_path):
    out = str(tmp_path / "x.kse")
    assert main(["--model", "nope", "--dataset", "fake", "--out", out]) == 4
    assert main(
        ["--model", "mobilenet_v3_small", "--dataset", "nope", "--out", out]
    ) == 5
    assert main(
        ["--model", "mobilenet_v3_small", "--dataset", "fake", "--out", out,
         "--batch-size", "0"]
    ) == 3


@pytest.mark.skipif(KSTAR is None, reason="analysis CLI not installed")
def test_primary_cli_analyzes_extracted_file(tmp_path):
    out = tmp_path / "feats.kse"
    assert main(
        ["--model", "mobilenet_v3_small", "--dataset", "fake:n=48,classes=4,size=32",
         "--out", str(out), "--limit", "48"]
    ) == 0
    report_path = tmp_path / "report.json"
    proc = subprocess.run(
        [KSTAR, "analyze", str(out), "-o", str(report_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads(report_path.read_text())
    assert report["n"] == 48
    assert report["d"] == 576
    assert report["concept_count"] == 4
    assert [c["name"] for c in report["concepts"]] == [
        "class0", "class1", "class2", "class3",
    ]
    assert sum(report["pattern_counts"].values()) == 4
