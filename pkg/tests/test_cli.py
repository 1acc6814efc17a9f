import json
from fractions import Fraction as F
from importlib import resources
from pathlib import Path

import pytest

from nikishin import cli
from nikishin.exactnum import GaussianRational
from nikishin.measures import load_schema

ROOT = Path(__file__).resolve().parents[1]


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_inverse_closed_forms(capsys):
    code, out, _ = run(["inverse", "--moments", "1,0,2", "--n", "0"], capsys)
    assert code == 0
    assert "d_-2 = 1" in out and "d_-1 = 0" in out and "d_0 = -2" in out


def test_solve_type2_quadratic(capsys):
    code, out, _ = run(["solve", "--type", "type2", "--system", "one-measure.json",
                        "--index", "2"], capsys)
    assert code == 0
    assert "1/3, -2, 1" in out


def test_solve_mixed_json(tmp_path, capsys):
    path = tmp_path / "solve.json"
    code, _, _ = run(["solve", "--system", "d1.json", "--m1", "1", "--m2", "0",
                      "--index", "1,1;1", "-o", str(path)], capsys)
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["passed"] is True
    assert path.with_suffix(".txt").exists()


def test_validate_bundled(capsys):
    code, out, _ = run(["validate", "--system", "touching-rational.json"], capsys)
    assert code == 0


def test_scan_small_budget(tmp_path, capsys):
    path = tmp_path / "scan.json"
    code, out, _ = run(["scan", "--system", "d1.json", "--budget", "3", "--workers", "1",
                        "-o", str(path)], capsys)
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["passed"] is True
    keys = {c["key"] for c in doc["checks"]}
    assert {"T2", "T3", "C1", "C3"} <= keys
    assert "note:" in out


def test_identities_custom_points(capsys):
    code, out, _ = run(["identities", "--system", "two-chain.json", "--points", "10;3/2+2i"],
                       capsys)
    assert code == 0
    assert "[ID] PASS" in out


def test_at_test_small(capsys):
    code, out, _ = run(["at-test", "--system", "toy.json", "--trials", "5", "--max-norm", "3",
                        "--workers", "1"], capsys)
    assert code == 0
    assert "[T1] PASS" in out


def test_converge_outputs(tmp_path, capsys):
    csv_path, gp = tmp_path / "c.csv", tmp_path / "c.dat"
    code, _, _ = run(["converge", "--system", "d1.json", "--grid=-3,-2", "--grid-points", "5",
                      "--max-norm", "7", "--workers", "1", "--csv", str(csv_path),
                      "--gnuplot", str(gp)], capsys)
    assert code == 0
    assert len(csv_path.read_text().splitlines()) == 8
    assert gp.read_text().startswith("# norm")


def test_certification_failure_exits_1(capsys):
    code, out, _ = run(["converge", "--system", "d1.json", "--grid=-3,-2", "--grid-points", "3",
                        "--max-norm", "5", "--max-slope", "-100", "--workers", "1"], capsys)
    assert code == 1
    assert "[C2] FAIL" in out


def test_missing_file_exits_2(capsys):
    code, _, err = run(["validate", "--system", "no-such-file.json"], capsys)
    assert code == 2 and "error" in err


def test_schema_violation_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"backend": "rational", "measures": "oops"}))
    code, _, err = run(["validate", "--system", str(bad)], capsys)
    assert code == 2 and "schema" in err


def test_overlap_exits_2(tmp_path, capsys):
    bad = tmp_path / "overlap.json"
    bad.write_text(json.dumps({"backend": "rational", "measures": [
        {"atoms": [["0", "1"], ["2", "1"]]}, {"atoms": [["1", "1"], ["3", "1"]]}]}))
    code, _, err = run(["validate", "--system", str(bad)], capsys)
    assert code == 2 and "supports overlap" in err


def test_usage_error_exits_2(capsys):
    code, _, _ = run(["solve", "--system", "d1.json"], capsys)
    assert code == 2


def test_internal_error_exits_3(monkeypatch, capsys):
    def boom(cfg):
        raise RuntimeError("unexpected")
    monkeypatch.setitem(cli.COMMANDS, "validate", boom)
    code, _, _ = run(["validate", "--system", "d1.json"], capsys)
    assert code == 3


def test_reports_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(["at-test", "--system", "toy.json", "--seed", "7", "--trials", "4",
             "--max-norm", "2", "--workers", "1", "-o", str(p)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_precision_env_override(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("NIKISHIN_PRECISION_BITS", "128")
    path = tmp_path / "v.json"
    code, _, _ = run(["validate", "--system", "d1.json", "--backend", "bigfloat",
                      "-o", str(path)], capsys)
    assert code == 0
    assert "128" in path.read_text()


@pytest.mark.parametrize("text,value", [
    ("10", F(10)),
    ("-5", F(-5)),
    ("3/2+2i", GaussianRational(F(3, 2), 2)),
    ("1/3-i", GaussianRational(F(1, 3), -1)),
    ("-2i", GaussianRational(0, -2)),
    ("i", GaussianRational(0, 1)),
])
def test_parse_point(text, value):
    assert cli.parse_point(text) == value


def test_schema_copy_in_docs_matches_package():
    shipped = json.loads((ROOT / "docs" / "system.schema.json").read_text())
    assert shipped == load_schema()


def test_bundled_systems_validate_against_schema():
    import jsonschema
    schema = load_schema()
    for entry in resources.files("nikishin.data").joinpath("systems").iterdir():
        if entry.name.endswith(".json"):
            jsonschema.validate(json.loads(entry.read_text()), schema)


def test_worker_count_does_not_change_report(tmp_path, capsys):
    a, b = tmp_path / "w1.json", tmp_path / "w2.json"
    run(["at-test", "--system", "toy.json", "--trials", "3", "--max-norm", "3", "--workers", "1",
         "-o", str(a)], capsys)
    run(["at-test", "--system", "toy.json", "--trials", "3", "--max-norm", "3", "--workers", "2",
         "-o", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()
