import json
import os

import pytest

from ftskey.cli import main

from conftest import DATA, GOLDEN


def data(name):
    return os.path.join(DATA, name)


def test_build_diagonal_matches_golden(capsys):
    assert main(["build", "--pq", data("diagonal.json")]) == 0
    with open(os.path.join(GOLDEN, "build_diagonal.txt")) as fh:
        assert capsys.readouterr().out == fh.read()


def test_build_degenerate_exits_1(capsys):
    assert main(["build", "--pq", data("identity.json")]) == 1
    assert "DegenerateTrace" in capsys.readouterr().err


def test_build_parse_error_exits_2(capsys):
    assert main(["build", "--pq", data("corrupt.json")]) == 2


def test_build_missing_file_exits_2(capsys):
    assert main(["build", "--pq", data("no-such-file.json")]) == 2


def test_build_parametric(capsys):
    assert main(["build", "--pq", data("parametric.json"), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["parameters"]) == 18


def test_check_identities_on_file(capsys):
    assert main(["check", "--suite", "identities", "--pq", data("diagonal.json")]) == 0
    lines = capsys.readouterr().out.splitlines()
    reports = [json.loads(l) for l in lines]
    assert reports and all(r["status"] == "pass" for r in reports)
    assert [r["check"] for r in reports] == sorted(r["check"] for r in reports)
    assert all("duration_ms" not in r for r in reports)


def test_check_timings_flag(capsys):
    assert main(["check", "--suite", "axioms", "--pq", data("diagonal.json"), "--timings"]) == 0
    reports = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert all("duration_ms" in r for r in reports)


def test_check_variety_cl10(capsys):
    assert main(["check", "--suite", "variety:CL10"]) == 0
    reports = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert any("dictionary:CL10_alt" in r["check"] and r["status"] == "pass" for r in reports)


def test_check_corrupt_pair_fails(tmp_path, capsys):
    # a pair whose trace is not unique is a failure, not an input error
    assert main(["check", "--suite", "axioms", "--pq", data("identity.json")]) == 1


def test_check_unknown_suite_exits_2(capsys):
    assert main(["check", "--suite", "nonsense"]) == 2
    assert main(["check", "--suite", "variety:nope"]) == 2


def test_strict_inconclusive_exits_3(capsys):
    # at cofactor bound 0 the cluster dictionaries cannot be certified
    assert main(["check", "--suite", "variety:CL10", "--bound", "0"]) == 0
    assert main(["check", "--suite", "variety:CL10", "--bound", "0", "--strict"]) == 3


def test_emit_and_variety(tmp_path, capsys):
    out = tmp_path / "f22.txt"
    assert main(["emit", "--variety", "F22", "--out", str(out)]) == 0
    assert len([l for l in out.read_text().splitlines() if not l.startswith("#")]) == 9
    js = tmp_path / "s8.json"
    assert main(["variety", "S8", "--out", str(js)]) == 0
    with open(os.path.join(GOLDEN, "varieties", "S8.json")) as fh:
        assert js.read_text() == fh.read()
    assert main(["emit", "--variety", "nope"]) == 2


def test_emit_laurent_system(capsys):
    assert main(["emit", "--variety", "P23_transform", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert {e["label"]: e["r_range"] for e in out["equations"]}["st"] == [-2, 2]


def test_weights_command(capsys):
    assert main(["weights", "U14", "--table", data("u14_example_weights.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["solution"]["dimension"] == 6
    assert out["graded_report"]["delta"] == "11"


def test_weights_bad_table(tmp_path, capsys):
    bad = tmp_path / "w.json"
    bad.write_text('{"x1": 1}')
    assert main(["weights", "U14", "--table", str(bad)]) == 2
