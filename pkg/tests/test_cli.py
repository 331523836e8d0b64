"""CLI contract: transcripts, exit codes, env override and determinism."""

import json

import pytest

from spectra.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_transcript(capsys):
    code, out, err = run(capsys, "count", "--poly", "x^2 - x - 1", "--n", "2")
    assert code == 0
    assert out == "7\n"
    assert err == ""


def test_verdict_transcript_json(capsys):
    code, out, _ = run(
        capsys, "--format", "json", "verdict", "--poly", "x^4 - x - 1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["conclusion"] == "DenseL0AndL0"
    assert [r["id"] for r in payload["rules"]] == ["R3", "R5"]


def test_verdict_text_mentions_rules(capsys):
    code, out, _ = run(capsys, "verdict", "--poly", "x^4 - x - 1")
    assert code == 0
    assert "conclusion: DenseL0AndL0" in out
    assert "rules: R3, R5" in out


def test_inconclusive_exit_code(capsys):
    code, out, _ = run(capsys, "verdict", "--poly=-1,1,0,-1,-1,1")
    assert code == 2
    assert "Inconclusive" in out


def test_usage_exit_codes(capsys):
    assert run(capsys, "verdict")[0] == 64
    assert run(capsys, "count", "--poly", "x^2 - x - 1")[0] == 64
    assert run(capsys, "nonsense")[0] == 64
    assert run(capsys)[0] == 64
    assert run(capsys, "verdict", "--poly", "x + y")[0] == 64
    assert (
        run(capsys, "verdict", "--poly", "x^2 - x - 1", "--root-interval", "1")[0]
        == 64
    )


def test_no_root_in_window_is_usage_error(capsys):
    code, _, err = run(capsys, "verdict", "--poly", "x^2 - 9")
    assert code == 64
    assert "usage error" in err


def test_precision_exhausted_exit(capsys):
    code, _, err = run(
        capsys, "--budget", "64", "verdict", "--poly", "1,0,0,-1,0,0,-1,0,0,-1,0,0,1"
    )
    assert code == 3
    assert "precision exhausted" in err


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("SPECTRA_BUDGET_BITS", "64")
    code, _, err = run(
        capsys, "verdict", "--poly", "1,0,0,-1,0,0,-1,0,0,-1,0,0,1"
    )
    assert code == 3
    # an explicit flag beats the environment
    monkeypatch.setenv("SPECTRA_BUDGET_BITS", "64")
    code2, out2, _ = run(
        capsys, "--budget", "4096", "count", "--poly", "x^2 - x - 1", "--n", "2"
    )
    assert code2 == 0
    assert out2 == "7\n"


def test_budget_env_rejects_garbage(capsys, monkeypatch):
    monkeypatch.setenv("SPECTRA_BUDGET_BITS", "soon")
    code, _, err = run(capsys, "count", "--poly", "x^2 - x - 1", "--n", "2")
    assert code == 64
    assert "SPECTRA_BUDGET_BITS" in err


def test_global_flags_after_subcommand(capsys, tmp_path):
    target = tmp_path / "v.json"
    code, out, _ = run(
        capsys, "verdict", "--poly", "x^4 - x - 1", "--format", "json",
        "--output", str(target),
    )
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["conclusion"] == "DenseL0AndL0"
    # the occurrence closest to the subcommand wins
    code2, out2, _ = run(
        capsys, "--format", "json", "count", "--poly", "x^2 - x - 1", "--n", "2",
        "--format", "text",
    )
    assert code2 == 0 and out2 == "7\n"


def test_json_output_byte_identical(capsys):
    _, out1, _ = run(capsys, "--format", "json", "verdict", "--poly", "x^4 - x - 1")
    _, out2, _ = run(capsys, "--format", "json", "verdict", "--poly", "x^4 - x - 1")
    assert out1 == out2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "verdict.json"
    code, out, _ = run(
        capsys,
        "--format",
        "json",
        "--output",
        str(target),
        "verdict",
        "--poly",
        "x^4 - x - 1",
    )
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["conclusion"] == "DenseL0AndL0"


def test_spectrum_csv_columns(capsys):
    code, out, _ = run(
        capsys, "--format", "csv", "spectrum", "--poly", "x^2 - x - 1", "--n", "3"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "index,value_decimal,gap_to_next"
    assert len(lines) == 13  # z_3 = 12 values for the golden ratio


def test_count_csv_columns(capsys):
    code, out, _ = run(
        capsys, "--format", "csv", "count", "--poly", "x^2 - x - 1", "--n", "4"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,z_n,ratio_decimal"
    assert lines[1].startswith("0,2,")
    assert lines[3].startswith("2,7,")


def test_lambda_min_text(capsys):
    code, out, _ = run(capsys, "lambda-min", "--poly", "x^2 - x - 1", "--n", "8")
    assert code == 0
    assert "smallest positive element: 0.618033988749895" in out


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "--poly", "x^2 - x - 1")
    assert code == 0
    assert "pisot: yes" in out
    assert "q: 1.61803398875" in out


def test_attractor_text_and_raster(tmp_path, capsys):
    code, out, _ = run(capsys, "attractor", "--lambda", "0.4", "--depth", "12")
    assert code == 0
    assert "connectivity: disconnected" in out

    target = tmp_path / "att.pgm"
    code2, out2, _ = run(
        capsys,
        "attractor",
        "--lambda=0.55,0.35",
        "--depth",
        "12",
        "--pixels",
        "32",
        "--raster",
        str(target),
    )
    assert code2 == 0
    assert target.read_bytes().startswith(b"P5\n32 32\n255\n")


def test_search_json(capsys):
    code, out, _ = run(
        capsys, "--format", "json", "search", "--poly", "x^4 - x - 1", "--dmax", "6"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "found"
    assert payload["witness"] == "x^4 - x - 1"


def test_examples_regression(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    assert "8/8 examples pass" in out
    assert out.count("PASS") == 9  # nine fixtures across eight examples
