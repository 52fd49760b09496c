"""CLI surface: subcommands, exit codes, deterministic reports, round trips."""
import json

import pytest

from hopfdual.cli import main
from hopfdual.catalog import get
from hopfdual.instancefile import (
    entries_equal,
    export_entry_json,
    parse_instance,
)


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "Z_C2" in out and "gauss" in out


def test_catalog_run_passes(capsys):
    assert main(["catalog", "run", "Z_C2", "--suite", "hopf"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_catalog_run_unknown_entry_is_input_error(capsys):
    assert main(["catalog", "run", "nope"]) == 2


def test_bad_suite_for_entry_is_input_error(capsys):
    assert main(["catalog", "run", "Z_C2", "--suite", "opposite"]) == 2


def test_export_round_trip(tmp_path, capsys):
    path = tmp_path / "z_c2.json"
    assert main(["catalog", "export", "Z_C2", str(path)]) == 0
    inst = parse_instance(path)
    assert entries_equal(get("Z_C2"), inst.to_entry())


def test_verify_exported_file(tmp_path, capsys):
    path = tmp_path / "gauss.json"
    assert main(["catalog", "export", "gauss", str(path)]) == 0
    assert main(["verify", str(path), "--suite", "crossed"]) == 0


def test_verify_mutated_antipode_fails_with_witness(tmp_path, capsys):
    path = tmp_path / "bad.json"
    doc = json.loads(export_entry_json(get("Z_C2")))
    doc["hopf"]["antipode"] = [["1", "1"], ["0", "0"]]  # S(g) = e
    path.write_text(json.dumps(doc))
    assert main(["verify", str(path), "--suite", "hopf"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "witness: g" in out


def test_verify_malformed_json_is_input_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["verify", str(path)]) == 2


def test_verify_out_of_range_index_names_quadruple(tmp_path, capsys):
    path = tmp_path / "range.json"
    doc = json.loads(export_entry_json(get("Z_C2")))
    doc["hopf"]["mult"].append([0, 0, 7, "1"])
    path.write_text(json.dumps(doc))
    assert main(["verify", str(path)]) == 2
    err = capsys.readouterr().err
    assert "[0, 0, 7, '1']" in err


def test_verify_crossed_without_action_is_input_error(tmp_path, capsys):
    path = tmp_path / "noaction.json"
    doc = json.loads(export_entry_json(get("gauss")))
    del doc["action"]
    path.write_text(json.dumps(doc))
    assert main(["verify", str(path), "--suite", "crossed"]) == 2
    err = capsys.readouterr().err
    assert "action" in err


def test_json_report_format(tmp_path):
    out = tmp_path / "report.json"
    assert main(["catalog", "run", "Z_C2", "--suite", "hopf", "--format",
                 "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["ok"] is True


def test_canonical_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        assert main(["catalog", "run", "gauss", "--suite", "crossed",
                     "--format", "json", "--out", str(target),
                     "--canonical"]) == 0
    assert a.read_bytes() == b.read_bytes()
    # non-canonical runs carry timings and need not be identical
    data = json.loads(a.read_text())
    assert all(c["millis"] == 0.0
               for s in data["sections"] for c in s["checks"])


def test_restricted_U_instance_reports_proper_failure(tmp_path, capsys):
    # U = span{ε}: λ stays a morphism; the χ leg is reported NotInvertible.
    doc = json.loads(export_entry_json(get("triv_C2")))
    doc["name"] = "triv_C2_smallU"
    doc["U"] = [["1", "1"]]
    path = tmp_path / "small_u.json"
    path.write_text(json.dumps(doc))
    assert main(["verify", str(path), "--suite", "duality"]) == 1
    out = capsys.readouterr().out
    assert "duality.lambda" in out
    assert "non-square" in out or "NotInvertible" in out or "invert" in out
