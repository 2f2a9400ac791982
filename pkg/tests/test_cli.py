"""End-to-end tests for the command-line interface."""

import json
from fractions import Fraction

import pytest

from slopecert import AtomKnot, KnotDescription, diameter_lower_bound
from slopecert.cli import RunConfig, main, run
from slopecert.jsonio import (
    canonical_dumps,
    description_to_json,
    diameter_certificate_to_json,
    load_document,
)


def write_description(tmp_path, name="desc.json", **kwargs):
    kwargs.setdefault(
        "base",
        AtomKnot(
            strict_numerical_slopes=frozenset({Fraction(0), Fraction(6)}),
            meridionally_small=True,
            ambient_pi1_cyclic=True,
        ),
    )
    kwargs.setdefault("cablings", ((1, 2),))
    d = KnotDescription(**kwargs)
    path = tmp_path / name
    path.write_text(canonical_dumps(description_to_json(d)))
    return d, str(path)


# --- snf --------------------------------------------------------------------


def test_snf_identity(tmp_path, capsys):
    path = tmp_path / "m.txt"
    path.write_text("2 2\n1 0\n0 1\n")
    assert main(["snf", str(path)]) == 0
    out = capsys.readouterr().out
    assert "diagonal: 1 1" in out


def test_snf_classic_example(tmp_path, capsys):
    path = tmp_path / "m.txt"
    path.write_text("2 2\n2 0\n0 3\n")
    assert main(["snf", "--format", "json", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["diagonal"] == [1, 6]
    # the transforms are included and square
    assert doc["U"]["rows"] == doc["U"]["cols"] == 2


def test_snf_bad_matrix(tmp_path, capsys):
    path = tmp_path / "m.txt"
    path.write_text("2 2\n1 2 3\n")
    assert main(["snf", str(path)]) == 2
    assert "input error" in capsys.readouterr().out


# --- cable-homology -----------------------------------------------------------


def test_cable_homology_text(capsys):
    assert main(["cable-homology", "--p", "2", "--q", "3"]) == 0
    out = capsys.readouterr().out
    assert "H1 = Z<c, m, l> / (3c - 2m - 3l)" in out
    assert "Z + Z" in out


def test_cable_homology_rejects_non_coprime(capsys):
    assert main(["cable-homology", "--p", "2", "--q", "4"]) == 2
    assert "not simple" in capsys.readouterr().out


# --- transfer -------------------------------------------------------------------


def test_transfer_standard_map(capsys):
    assert main(["transfer", "--p", "2", "--q", "3"]) == 0
    out = capsys.readouterr().out
    assert "r' = q^2 r + u" in out or "epsilon" in out
    assert "u = 6" in out
    assert "FAIL" not in out


def test_transfer_json_and_emit(tmp_path, capsys):
    emitted = tmp_path / "cert.json"
    code = main(
        ["transfer", "--p", "-3", "--q", "5", "--orientation", "-1",
         "--format", "json", "--emit", str(emitted)]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["certificate"]["map"] == {"epsilon": 1, "q": 5, "u": [-15, 1]}
    # the emitted file is the same certificate and verifies cleanly
    cert = load_document(emitted.read_text(), str(emitted))
    assert cert.map.u == -15
    assert main(["verify", str(emitted)]) == 0
    assert "overall: PASS" in capsys.readouterr().out


def test_transfer_rejects_q_one(capsys):
    assert main(["transfer", "--p", "5", "--q", "1"]) == 2
    assert "at least 2" in capsys.readouterr().out


# --- propagate -------------------------------------------------------------------


def test_propagate_text(tmp_path, capsys):
    _, path = write_description(tmp_path)
    assert main(["propagate", str(path)]) == 0
    out = capsys.readouterr().out
    assert "base" in out and "level 1" in out
    assert "diameter 24" in out


def test_propagate_json(tmp_path, capsys):
    _, path = write_description(tmp_path)
    assert main(["propagate", "--format", "json", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["levels"][1]["slopes"] == [[2, 1], [26, 1]]
    assert doc["levels"][1]["diameter"] == [24, 1]


def test_propagate_requires_small_base(tmp_path, capsys):
    _, path = write_description(tmp_path, base=AtomKnot(), cablings=((1, 2),))
    assert main(["propagate", str(path)]) == 2
    assert "meridionally small" in capsys.readouterr().out


# --- verify ---------------------------------------------------------------------


def test_verify_description_pass(tmp_path, capsys):
    _, path = write_description(tmp_path)
    assert main(["verify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "result: PASS" in out
    assert "rule C" in out


def test_verify_emitted_certificate_round_trip(tmp_path, capsys):
    _, path = write_description(tmp_path)
    emitted = tmp_path / "cert.json"
    assert main(["verify", "--emit", str(emitted), str(path)]) == 0
    capsys.readouterr()
    assert main(["verify", str(emitted)]) == 0
    out = capsys.readouterr().out
    assert "diameter certificate" in out
    assert "overall: PASS" in out


def test_verify_detects_tampering(tmp_path, capsys):
    d, _ = write_description(tmp_path)
    doc = diameter_certificate_to_json(diameter_lower_bound(d))
    doc["d_lower"] = [25, 1]
    bad = tmp_path / "bad.json"
    bad.write_text(canonical_dumps(doc))
    assert main(["verify", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "FAIL replay" in out
    assert "overall: FAIL" in out


def test_verify_multiple_inputs_and_errors(tmp_path, capsys):
    _, path = write_description(tmp_path)
    junk = tmp_path / "junk.json"
    junk.write_text("{nope")
    code = main(["verify", str(path), str(junk)])
    assert code == 2
    out = capsys.readouterr().out
    assert "result: PASS" in out  # the good file is still reported
    assert "malformed JSON" in out
    assert "overall: FAIL" in out


def test_verify_missing_file(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "absent.json")]) == 2
    assert "input error" in capsys.readouterr().out


def test_verify_emit_needs_single_input(tmp_path, capsys):
    _, p1 = write_description(tmp_path, name="a.json")
    _, p2 = write_description(tmp_path, name="b.json")
    code = main(["verify", "--emit", str(tmp_path / "c.json"), p1, p2])
    assert code == 2
    assert "single input" in capsys.readouterr().out


def test_verify_json_report(tmp_path, capsys):
    _, path = write_description(tmp_path)
    assert main(["verify", "--format", "json", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "verify_report"
    assert doc["ok"] is True
    assert doc["results"][0]["certificate"]["d_lower"] == [24, 1]


# --- run() plumbing ---------------------------------------------------------------


def test_grid_must_be_positive(tmp_path):
    _, path = write_description(tmp_path)
    code, report = run(RunConfig(command="verify", inputs=(path,), grid=0))
    assert code == 2
    assert "grid bound" in report


def test_unknown_command_is_input_error():
    code, report = run(RunConfig(command="frobnicate"))
    assert code == 2
    assert "unknown command" in report


def test_argparse_rejects_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_reports_are_deterministic(tmp_path):
    _, path = write_description(tmp_path)
    for fmt in ("text", "json"):
        config = RunConfig(command="verify", inputs=(path,), format=fmt)
        assert run(config) == run(config)
    config = RunConfig(command="transfer", p=4, q=7, format="json")
    assert run(config) == run(config)
