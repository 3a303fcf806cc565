import json
import subprocess
import sys

import pytest

from secrecygain.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gain_exact(capsys):
    code, out, _ = run(capsys, "gain", "--extremal", "24", "--exact")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == "secrecygain.report/1"
    assert doc["outputs"]["gain"]["exact"] == "256/63"


def test_gain_exact_from_catalog_lattice(capsys):
    code, out, _ = run(capsys, "gain", "--lattice", "E8", "--exact")
    assert code == 0 and json.loads(out)["outputs"]["gain"]["exact"] == "4/3"


def test_gain_exact_rejects_non_unimodular(capsys):
    code, _, err = run(capsys, "gain", "--lattice", "D4", "--exact")
    assert code == 2 and "even unimodular" in err


def test_gain_numeric_d4(capsys):
    code, out, _ = run(capsys, "gain", "--lattice", "D4")
    o = json.loads(out)["outputs"]
    assert code == 0
    assert o["y_star_db"] == pytest.approx(-1.50515, abs=1e-3)
    assert o["reliable"] is True


def test_gain_numeric_from_file(capsys, tmp_path):
    p = tmp_path / "z2.json"
    p.write_text(json.dumps({"name": "Z2", "dim": 2, "gram": [["1", "0"], ["0", "1"]]}))
    code, out, _ = run(capsys, "gain", "--lattice-file", str(p))
    doc = json.loads(out)
    assert code == 0 and doc["inputs"]["source"] == "z2"
    assert doc["outputs"]["gain"] == pytest.approx(1.0)
    assert any("flat" in w for w in doc["warnings"])


def test_unsupported_extremal_dim(capsys):
    code, _, err = run(capsys, "gain", "--extremal", "16", "--exact")
    assert code == 2 and "supported" in err


def test_missing_file_is_io_error(capsys, tmp_path):
    code, _, _ = run(capsys, "gain", "--lattice-file", str(tmp_path / "nope.json"))
    assert code == 1


def test_bad_json_is_usage_error(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, _ = run(capsys, "gain", "--lattice-file", str(p))
    assert code == 2


def test_curve_csv_stdout(capsys):
    code, out, _ = run(capsys, "curve", "--extremal", "8", "--min-db", "-2", "--max-db", "2", "--steps", "5")
    assert code == 0
    assert "\r" not in out
    lines = out.splitlines()
    assert lines[0] == "y_db,xi"
    assert len(lines) == 6
    t, xi = lines[3].split(",")
    assert float(t) == 0 and float(xi) == pytest.approx(4 / 3, rel=1e-15)


def test_curve_is_byte_identical(capsys):
    args = ("curve", "--lattice", "D4", "--steps", "21")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_curve_to_file_and_outdir(capsys, tmp_path, monkeypatch):
    out = tmp_path / "c.csv"
    code, rep, _ = run(capsys, "curve", "--extremal", "8", "--steps", "11", "--out", str(out))
    assert code == 0
    assert json.loads(rep)["outputs"]["rows"] == 11
    assert out.read_text().startswith("y_db,xi\n")
    monkeypatch.setenv("SECRECYGAIN_OUTDIR", str(tmp_path))
    code, _, _ = run(capsys, "curve", "--lattice", "Zn:2", "--steps", "3")
    assert code == 0 and (tmp_path / "curve_Zn2.csv").exists()


def test_curve_bad_range(capsys):
    code, _, _ = run(capsys, "curve", "--extremal", "8", "--min-db", "3", "--max-db", "1")
    assert code == 2


def test_bound_table(capsys):
    code, out, err = run(capsys, "bound", "--n-min", "8", "--n-max", "24", "--step", "4", "--asymptotic")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,siegel_weil,asymptotic,extremal_gain"
    assert [l.split(",")[0] for l in lines[1:]] == ["8", "16", "24"]
    assert lines[2].split(",")[3] == ""
    assert float(lines[1].split(",")[1]) == pytest.approx(4 / 3)
    assert "skipping n=12" in err


def test_wiretap_rate_and_op_point(capsys):
    code, out, _ = run(capsys, "wiretap", "rate", "--R", "3", "--gamma-db", "10.99209")
    o = json.loads(out)["outputs"]
    assert code == 0 and o["R_s"] == pytest.approx(2.0, abs=1e-4)
    code, out, _ = run(capsys, "wiretap", "op-point", "--R", "3", "--Rs", str(o["R_s"]), "--gamma", str(o["gamma_check"]))
    assert json.loads(out)["outputs"]["y"] == pytest.approx(1.0, rel=1e-12)


def test_wiretap_rate_negative_flag(capsys):
    _, out, _ = run(capsys, "wiretap", "rate", "--R", "1", "--gamma", "1e6")
    doc = json.loads(out)
    assert doc["outputs"]["negative_rate"] is True and doc["warnings"]


def test_wiretap_simulate(capsys, tmp_path):
    cfg = tmp_path / "z.json"
    cfg.write_text(json.dumps({"n": 1, "sigma_b": 0.1, "sigma_e": 0.8, "lattice_b": "Zn:1", "lattice_e": {"sublattice": [[4]]}}))
    args = ("wiretap", "simulate", "--config", str(cfg), "--trials", "20000", "--seed", "4")
    code, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert code == 0 and a == b
    o = json.loads(a)["outputs"]
    assert o["index"] == 4 and o["regime_flag"] is False


def test_wiretap_simulate_bad_config(capsys, tmp_path):
    cfg = tmp_path / "z.json"
    cfg.write_text(json.dumps({"n": 1, "sigma_b": 0.9, "sigma_e": 0.8}))
    code, _, err = run(capsys, "wiretap", "simulate", "--config", str(cfg), "--seed", "1")
    assert code == 2 and "sigma_e" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["gain"])
    assert exc.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "secrecygain", "gain", "--extremal", "8", "--exact"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["outputs"]["gain"]["exact"] == "4/3"
