import json

import numpy as np
import pytest

from lie_euler import adjoint as adj
from lie_euler.cli import main


def run(capsys, *argv):
  code = main(list(argv))
  return code, capsys.readouterr().out


def run_json(capsys, *argv):
  code, out = run(capsys, *argv)
  doc = json.loads(out)
  assert doc["schema_version"] == "1.0"
  return code, doc


def test_table_markdown(capsys):
  code, out = run(capsys, "table", "--algebra", "g")
  lines = out.strip().splitlines()
  assert code == 0 and len(lines) == 15
  assert "X13" in lines[0]
  code, out = run(capsys, "table", "--algebra", "g1")
  assert len(out.strip().splitlines()) == 14 and "Y12" in out


def test_table_json_and_csv(capsys):
  code, doc = run_json(capsys, "table", "--format", "json")
  assert code == 0 and doc["algebra"] == "g"
  code, out = run(capsys, "table", "--format", "csv")
  rows = out.strip().splitlines()
  assert len(rows) == 14 and rows[0].startswith(",X1,")


def test_structure_report(capsys):
  code, doc = run_json(capsys, "structure")
  checks = doc["summary"]["checks"]
  assert checks["center_dim_1"] and checks["radical_series_9_7_3_0"]
  assert checks["levi_decomposition"] and checks["galilean_ideal"]
  assert any("X9" in e["location"] for e in doc["errata"])
  # idempotency of the derived algebra of g1 does not hold, so the command reports failure
  assert code == 1 and doc["failures"] == ["derived_g1_idempotent"]


def test_structure_complement(capsys):
  code, doc = run_json(capsys, "structure", "--check", "complement")
  assert code == 0 and doc["result"]["complement_abelian"]


def test_adjoint_identity(capsys):
  code, doc = run_json(capsys, "adjoint", "--i", "13", "--s", "0.7", "--format", "json")
  assert code == 0 and np.array_equal(np.array(doc["matrix"]), np.eye(13))


def test_adjoint_layouts(capsys):
  _, p = run_json(capsys, "adjoint", "--i", "1", "--s", "0.5", "--format", "json")
  _, c = run_json(capsys, "adjoint", "--i", "1", "--s", "0.5", "--format", "json", "--layout", "column")
  assert np.array_equal(np.array(p["matrix"]), np.array(c["matrix"]).T)
  code, out = run(capsys, "adjoint", "--i", "12", "--s", "0.5")
  assert code == 0 and out.startswith("| |")


def test_classify(capsys):
  code, doc = run_json(capsys, "classify", "--a", "0,0,0,0,0,0,0,1,3,0,0,0,0")
  assert code == 0 and doc["case_id"] == 1 and doc["mask"] == [8, 9, 10, 11, 12, 13]
  code, doc = run_json(capsys, "classify", "--a", "0,0,0,0,0,0,0,2,1,0,0,0,0")
  assert code == 1 and doc["case_id"] == 0 and "1" in doc["failed_conditions"]


def test_classify_bad_vector(capsys):
  with pytest.raises(SystemExit):
    main(["classify", "--a", "1,2,3"])


def test_normalize_random_replays(capsys):
  code, doc = run_json(capsys, "normalize", "--seed", "5")
  res = doc["result"]
  assert doc["seed"] == 5
  rep = adj.replay(doc["a"], res["moves"])
  assert np.abs(rep - np.array(res["representative"])).max() <= 1e-9
  assert code == (0 if res["status"] == "ok" else 1)
  _, again = run_json(capsys, "normalize", "--seed", "5")
  assert again == doc


def test_normalize_case(capsys):
  code, doc = run_json(capsys, "normalize", "--case", "16", "--a", "1,0,0,1,0,0,0,0,0,0,0,0,0")
  assert code == 0 and doc["result"]["case_id"] == 16


def test_normalize_zero_is_error(capsys):
  code, doc = run_json(capsys, "normalize", "--a", ",".join(["0"] * 13))
  assert code == 2 and doc["error"] == "zero element" and doc["passed"] is False


def test_transform(capsys):
  code, doc = run_json(capsys, "transform", "--spec", '{"generator": 5, "s": 0.25}',
                       "--solution", "uniform", "--points", "3")
  assert code == 0 and len(doc["values"]) == 3
  assert doc["values"][0][0] == pytest.approx(0.3 - 0.25)


def test_residual(capsys):
  code, doc = run_json(capsys, "residual", "--solution", "stratified", "--grid", "9")
  assert code == 0 and doc["report"]["valid"]
  assert max(doc["report"]["max_norm"].values()) <= 1e-13
  code, doc = run_json(capsys, "residual", "--transform", "g8", "--lambda", "1.5", "--grid", "9")
  assert code == 0


def test_residual_csv(capsys, tmp_path):
  path = tmp_path / "r.csv"
  code, doc = run_json(capsys, "residual", "--solution", "control", "--grid", "5", "--csv", str(path))
  assert code == 0 and doc["rows"] == 81 and path.exists()


def test_residual_domain_error(capsys):
  code, doc = run_json(capsys, "residual", "--transform", '{"generator": 1, "s": 20}', "--grid", "5")
  assert code == 2 and "domain exceeded" in doc["error"]


def test_verify_brackets(capsys):
  code, doc = run_json(capsys, "verify", "--suite", "brackets")
  summary = doc["suites"]["brackets"]["summary"]
  assert code == 0 and doc["passed"]
  assert summary["g_entries"] == 169 and summary["jacobi_triples"] == 286
  assert summary["g_mismatches"] == 0 and summary["g1_mismatches"] == 0


def test_verify_invariance(capsys):
  code, doc = run_json(capsys, "verify", "--suite", "invariance")
  assert code == 0 and doc["suites"]["invariance"]["summary"]["generators_invariant"] == 13


def test_verify_residual_single(capsys):
  code, doc = run_json(capsys, "verify", "--suite", "residual", "--transform", "g5", "--s", "0.2")
  summary = doc["suites"]["residual"]["summary"]
  assert code == 0
  assert set(summary["reports"]) == {"constant", "uniform", "stratified"}
  assert all(r["passed"] for r in summary["reports"].values())


def test_verify_failure_list(capsys):
  code, doc = run_json(capsys, "verify", "--suite", "structure")
  assert code == 1 and doc["failures"] == ["structure: derived_g1_idempotent"]


def test_gamma_option(capsys):
  code, doc = run_json(capsys, "residual", "--gamma", "5/3", "--grid", "5")
  assert code == 0
  code, doc = run_json(capsys, "residual", "--gamma", "1.4", "--grid", "5")
  assert code == 0


def test_errata(capsys):
  code, doc = run_json(capsys, "errata")
  assert code == 0 and len(doc["errata"]) == 10
  code, out = run(capsys, "errata", "--format", "markdown")
  assert out.count("\n- ") == 9
