import csv
import json
import os

import numpy as np
import pytest

from opweno.cli import main
from opweno.diagnostics import read_probe_csv
from opweno.runconfig import parse_config
from opweno.runner import emit_plotdata, run_single, run_sweep

SINE_CFG = "problem=sine scheme=mop-acmk N=20 cfl=0.4 t_end=0.5"


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text + "\n")
    return str(path)


def test_run_single_writes_artifacts(tmp_path):
    cfg = parse_config(SINE_CFG + " nonop_scan=true mapping_trace=true overshoot=true")
    out = tmp_path / "run"
    summary, field, hooks = run_single(cfg, outdir=str(out))
    assert (out / "solution.csv").exists()
    assert (out / "nonop.csv").exists()
    assert (out / "trace.csv").exists()
    data = json.loads((out / "summary.json").read_text())
    assert data["steps"] == summary["steps"] > 0
    assert data["nonop_count"] == 0
    assert "L1" in data


def test_run_single_rejects_multiple_resolutions(tmp_path):
    cfg = parse_config("problem=sine scheme=js N=20,40 t_end=0.5")
    with pytest.raises(Exception):
        run_single(cfg)


def test_sweep_rows_match_single_runs(tmp_path):
    cfg = parse_config("problem=sine schemes=js,mop-acmk N=10,20 cfl=0.4 "
                       "t_end=0.5 eps=1e-6 reference_scheme=js")
    rows = run_sweep(cfg, outdir=str(tmp_path))
    assert len(rows) == 4
    # rerunning one (scheme, N) alone reproduces its sweep row exactly
    single, _, _ = run_single(cfg, scheme=cfg.sweep_schemes()[1][1], n=20)
    row = [r for r in rows if r[0] == "mop-acmk" and r[1] == 20][0]
    assert row[2] == single["L1"] and row[3] == single["L2"] and row[4] == single["Linf"]
    # orders populated only from the second resolution on
    assert row[5] is not None and rows[0][5] is None
    # increased-error columns against the reference scheme
    assert row[8] is not None
    with open(tmp_path / "errors.csv", newline="") as fh:
        header = next(csv.reader(fh))
    assert header == ["scheme", "N", "L1", "L2", "Linf",
                      "order1", "order2", "orderinf", "incL1", "incL2", "incLinf"]


def test_cli_run_and_determinism(tmp_path, capsys):
    cfg_path = _write(tmp_path, "run.cfg", SINE_CFG + " nonop_scan=true")
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", cfg_path, "--outdir", str(out1)]) == 0
    assert main(["run", cfg_path, "--outdir", str(out2)]) == 0
    for name in ("solution.csv", "nonop.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    summary = json.loads(capsys.readouterr().out.rsplit("}\n", 2)[-2] + "}")
    assert summary["scheme"] == "mop-acmk"


def test_cli_exit_codes(tmp_path, capsys):
    bad = _write(tmp_path, "bad.cfg", "problem=slp scheme=mop-acmk cfs0=0.5")
    assert main(["run", bad]) == 2
    unstable = _write(tmp_path, "unstable.cfg",
                      "problem=sine scheme=js N=20 cfl=9.0 t_end=20.0")
    assert main(["run", unstable, "--outdir", str(tmp_path / "u")]) == 3
    capsys.readouterr()


def test_cli_probe_matches_library(tmp_path, capsys):
    assert main(["probe"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "label,w0,w1,w2,u,err,pct"
    assert len(out) == 10
    path = tmp_path / "probe.csv"
    assert main(["probe", "--out", str(path)]) == 0
    rows = read_probe_csv(path)
    assert rows[0][0] == "pm6-c1-js"
    assert rows[0][4] == pytest.approx(0.81908, abs=1e-12)
    capsys.readouterr()


def test_cli_classify(capsys):
    assert main(["classify", "mop-acmk"]) == 0
    assert "mop-acmk: OP" in capsys.readouterr().out
    assert main(["classify", "m", "--samples", "501"]) == 0
    out = capsys.readouterr().out
    assert "m: non-OP" in out and "witness" in out


def test_cli_sweep(tmp_path, capsys):
    cfg_path = _write(tmp_path, "sweep.cfg",
                      "problem=sine schemes=js,m N=10,20 cfl=0.4 t_end=0.5")
    assert main(["sweep", cfg_path, "--outdir", str(tmp_path / "sw")]) == 0
    assert (tmp_path / "sw" / "errors.csv").exists()
    capsys.readouterr()


def test_plotdata_kinds(tmp_path, capsys):
    # mapping-curve straight from a scheme
    curve = tmp_path / "curve.csv"
    assert main(["plotdata", "mapping-curve", "--scheme", "mop-acmk",
                 "--samples", "101", "--out", str(curve)]) == 0
    with open(curve, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 101
    values = {float(r["g0"]) for r in rows}
    assert values <= {0.0, 0.1, 0.3, 0.6, 1.0}

    # run-dir based kinds
    cfg = parse_config(SINE_CFG + " nonop_scan=true mapping_trace=true")
    run_dir = tmp_path / "run"
    run_single(cfg, outdir=str(run_dir))
    sol = emit_plotdata("solution", str(tmp_path / "sol.csv"), run_dir=str(run_dir))
    assert os.path.exists(sol)
    tr = emit_plotdata("trace-scatter", str(tmp_path / "tr.csv"), run_dir=str(run_dir))
    assert os.path.exists(tr)
    overlay = emit_plotdata("nonop-overlay", str(tmp_path / "ov.csv"),
                            run_dir=str(run_dir))
    with open(overlay, newline="") as fh:
        assert list(csv.DictReader(fh)) == []  # OP scheme: empty overlay

    # 2D slice
    cfg2 = parse_config("problem=riemann2d-c4 scheme=js N=20 cfl=0.5 t_end=0.01")
    run2 = tmp_path / "run2d"
    run_single(cfg2, outdir=str(run2))
    sl = emit_plotdata("slice-2d", str(tmp_path / "slice.csv"),
                       run_dir=str(run2), y=0.5)
    with open(sl, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 20
    assert list(rows[0]) == ["x", "rho"]
    capsys.readouterr()


def test_plotdata_missing_inputs(tmp_path):
    assert main(["plotdata", "solution", "--run-dir", str(tmp_path),
                 "--out", str(tmp_path / "x.csv")]) == 2
