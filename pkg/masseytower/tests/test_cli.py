"""Exit codes of the command line."""

import json

import pytest

from masseytower.cli import EXIT_CONFIG, EXIT_OK, build_parser, main

ENV = ("MASSEY_PRIME", "MASSEY_TIME_LIMIT", "MASSEY_OUTPUT", "MASSEY_PROVIDER", "MASSEY_GRH", "MASSEY_JOBS", "MASSEY_SEED", "MASSEY_TIMINGS")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ENV:
        monkeypatch.delenv(name, raising=False)


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_scan_without_rank_two_fields(tmp_path, capsys):
    out = tmp_path / "scan.jsonl"
    assert main(["scan", "--prime", "3", "--from", "-100", "--to", "-3", "--out", str(out)]) == EXIT_OK
    assert out.read_text() == ""


def test_scan_config_errors(tmp_path):
    out = str(tmp_path / "scan.jsonl")
    assert main(["scan", "--prime", "4", "--from", "-100", "--to", "-3", "--out", out]) == EXIT_CONFIG
    assert main(["scan", "--from", "-3", "--to", "-100", "--out", out]) == EXIT_CONFIG
    assert main(["scan", "--from", "-100", "--to", "-3", "--provider", str(tmp_path / "none.txt"), "--out", out]) == EXIT_CONFIG


def test_report(tmp_path, capsys):
    path = tmp_path / "scan.jsonl"
    path.write_text("")
    assert main(["report", "--in", str(path), "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["groups"] == {}
    path.write_text('{"schema_version": 1, "p": 3')
    assert main(["report", "--in", str(path)]) == EXIT_CONFIG


def test_verify_resolutions(capsys):
    assert main(["verify-resolutions", "--prime", "3"]) == EXIT_OK
    assert "pass" in capsys.readouterr().out
    assert main(["verify-resolutions", "--prime", "9"]) == EXIT_CONFIG


def test_oracle(capsys):
    assert main(["oracle", "--group", "Z3", "--trials", "5"]) == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out
