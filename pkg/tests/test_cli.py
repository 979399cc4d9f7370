import csv
import json
import math

import numpy as np
import pytest

from qentropy.cli import run


def _rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_coherent_evolve_starts_at_minimum(tmp_path):
    out = tmp_path / "s.csv"
    assert run(["coherent-evolve", "--sigma2", "1", "--model", "schroedinger", "--mass", "1",
                "--tmax", "10", "-o", str(out)]) == 0
    rows = _rows(out)
    assert list(rows[0]) == ["t", "s_r", "s_k", "s_total", "s_closed_form"]
    assert len(rows) == 21
    assert float(rows[0]["s_total"]) == pytest.approx(1 + math.log(math.pi), abs=1e-3)


def test_identical_config_gives_identical_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["two-state", "--steps", "11", "--points", "256", "--extent", "20"]
    assert run(args + ["-o", str(a)]) == 0
    assert run(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_two_state_columns_and_probabilities(tmp_path):
    out = tmp_path / "t.csv"
    assert run(["two-state", "--steps", "21", "-o", str(out)]) == 0
    rows = _rows(out)
    assert list(rows[0]) == ["t", "p1", "p2", "s_total"]
    for r in rows:
        assert float(r["p1"]) + float(r["p2"]) == pytest.approx(1.0, abs=1e-11)


def test_n_state_accepts_json_matrix(tmp_path):
    hi = tmp_path / "hi.json"
    hi.write_text(json.dumps([[0, 0.3, 0], [0.3, 0, 0.2], [0, 0.2, 0]]))
    out = tmp_path / "n.csv"
    assert run(["n-state", "--h0", "[0, 1, 2]", "--hi", str(hi), "--steps", "5", "-o", str(out)]) == 0
    rows = _rows(out)
    assert list(rows[0]) == ["t", "p1", "p2", "p3"]
    for r in rows:
        assert sum(float(r[k]) for k in ("p1", "p2", "p3")) == pytest.approx(1.0, abs=1e-12)


def test_n_state_rejects_asymmetric_matrix(capsys):
    assert run(["n-state", "--h0", "[0, 1]", "--hi", "[[0, 1], [0, 0]]"]) == 2


def test_hydrogen_standard_report(capsys):
    assert run(["hydrogen", "--variant", "standard"]) == 0
    rep = _json(capsys)
    assert rep["schema_version"] == "1"
    assert rep["delta_s"] == pytest.approx(-0.740, abs=0.02)
    for key in ("s_r_210", "s_r_100", "s_p_210", "s_p_100", "photon_bound"):
        assert key in rep


def test_classify_constant_series(tmp_path, capsys):
    p = tmp_path / "constant.csv"
    p.write_text("t,s_total\n" + "".join(f"{t},2.5\n" for t in range(10)))
    assert run(["classify", "--input", str(p)]) == 0
    rep = _json(capsys)
    assert rep["label"] == "C" and rep["t_c"] is None


def test_classify_reads_emitted_series(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run(["coherent-evolve", "--tmax", "10", "-o", str(out)]) == 0
    assert run(["classify", "--input", str(out), "--epsilon", "1e-4"]) == 0
    assert _json(capsys)["label"] == "I"


def test_classify_missing_column(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("t,value\n0,1\n1,2\n2,3\n")
    assert run(["classify", "--input", str(p)]) == 2


def test_min_bound(capsys):
    assert run(["min-bound", "--dim", "3"]) == 0
    assert _json(capsys)["min_entropy"] == pytest.approx(3 * (1 + math.log(math.pi)), abs=1e-10)


def test_entropy_roundtrip_through_amplitude_csv(tmp_path, capsys):
    amp = tmp_path / "amp.csv"
    assert run(["entropy", "--points", "1024", "--extent", "40", "--sigma2", "2",
                "--save-amplitude", str(amp)]) == 0
    direct = _json(capsys)
    meta = json.loads((tmp_path / "amp.csv.json").read_text())
    assert meta["representation"] == "position" and meta["grid"]["points_per_axis"] == 1024
    assert _rows(amp)[0].keys() == {"index", "x", "re", "im"}
    assert run(["entropy", "--input", str(amp), "--guard", "off"]) == 0
    again = _json(capsys)
    assert again["s_total"] == pytest.approx(direct["s_total"], abs=1e-9)


def test_verify_symmetries_report(capsys):
    assert run(["verify-symmetries", "--count", "5", "--seed", "3"]) == 0
    rep = _json(capsys)
    assert rep["seed"] == 3
    assert rep["identities_ok"] and rep["entropy_invariant"] and rep["cpt_involution_ok"]


def test_seed_changes_only_corpus_outputs(capsys):
    run(["verify-symmetries", "--count", "3", "--seed", "1"])
    a = _json(capsys)
    run(["verify-symmetries", "--count", "3", "--seed", "2"])
    b = _json(capsys)
    assert a["identities"] == b["identities"]
    assert a["max_entropy_deviation"] != b["max_entropy_deviation"]


def test_collide_small_run(tmp_path):
    out = tmp_path / "c.csv"
    assert run(["collide", "--grid", "256", "--extent", "400", "--c", "60", "--steps", "5",
                "--guard", "off", "-o", str(out)]) == 0
    rows = _rows(out)
    assert list(rows[0]) == ["t", "s_total", "s_sum_singles", "overlap"]
    assert len(rows) == 5


def test_guard_trip_exits_3_with_diagnostic(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code = run(["coherent-evolve", "--points", "16", "--guard", "fail", "-o", str(out)])
    assert code == 3
    diag = json.loads(capsys.readouterr().err)
    assert diag["status"] == "guard_failure" and not diag["guard"]["ok"]
    assert not out.exists()


def test_guard_warn_still_writes(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run(["coherent-evolve", "--points", "16", "--guard", "warn", "-o", str(out)]) == 0
    assert out.exists()
    assert json.loads(capsys.readouterr().err)["status"] == "guard_warning"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["min-bound", "--no-such-flag"],
    ["coherent-evolve", "--sigma2", "-1"],
    ["coherent-evolve", "--points", "4"],
    ["collide", "--stats", "anyon"],
    ["two-state", "--levels", "1,1"],
])
def test_validation_errors_exit_2(argv):
    assert run(argv) == 2


def test_unwritable_path_exit_2(tmp_path):
    assert run(["min-bound", "-o", str(tmp_path / "missing" / "x.json")]) == 2


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"sigma2": 2.0, "tmax": 1.0, "steps": 3}))
    out = tmp_path / "s.csv"
    assert run(["coherent-evolve", "--config", str(cfg), "--steps", "5", "-o", str(out)]) == 0
    rows = _rows(out)
    assert len(rows) == 5
    assert float(rows[-1]["t"]) == pytest.approx(1.0)


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(["coherent-evolve", "--config", str(cfg)]) == 2


def test_csv_float_format(tmp_path):
    out = tmp_path / "s.csv"
    run(["coherent-evolve", "--tmax", "1", "--steps", "2", "-o", str(out)])
    first = out.read_text().splitlines()[1].split(",")
    assert first[0] == "0"
    assert all(len(v.replace("-", "").replace(".", "").split("e")[0]) <= 12 for v in first)
    assert np.isfinite([float(v) for v in first]).all()
