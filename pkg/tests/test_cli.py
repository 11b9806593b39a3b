import json
import shutil
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from click.testing import CliRunner

from pgcurves.cli import cli, run

from conftest import CURVES


def invoke(*args):
    return CliRunner().invoke(cli, [str(a) for a in args])


def write_spec(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return path


@pytest.mark.parametrize("args, code", [
    (["analyze", CURVES / "constant_ratio.json"], 0),
    (["analyze", CURVES / "circle.json"], 0),
    (["analyze", CURVES / "timelike.json"], 0),
    (["analyze", CURVES / "line.json"], 1),
    (["verify", CURVES / "salkowski_tail.json"], 0),
    (["reconstruct", CURVES / "helix_intrinsic.json"], 0),
    (["reconstruct", CURVES / "circle.json"], 2),
    (["analyze", CURVES / "missing.json"], 2),
    (["plot", CURVES / "circle.json", "--projection", "ab"], 2),
    (["analyze", CURVES / "circle.json", "--origin", "1,2"], 2),
    (["analyze", CURVES / "circle.json", "--samples", "3"], 2),
    ([], 2),
])
def test_exit_codes(args, code):
    assert run([str(a) for a in args]) == code


def test_bad_expression_reports_field_and_column(tmp_path, capsys):
    spec = write_spec(tmp_path, {"form": "graph", "y": "2*+x", "z": "x", "domain": [0, 1]})
    assert run(["analyze", str(spec)]) == 2
    err = capsys.readouterr().err
    assert "field 'y'" in err and "column 3" in err


def test_invalid_json_is_a_spec_error(tmp_path):
    assert run(["analyze", str(write_spec(tmp_path, "{not json"))]) == 2


def test_numeric_failures_exit_3(tmp_path):
    spec = write_spec(tmp_path, {"form": "intrinsic", "kappa": "1", "tau": "400",
                                 "domain": [0, 1]})
    assert run(["reconstruct", str(spec)]) == 3
    flip = write_spec(tmp_path, {"form": "intrinsic", "kappa": "1", "tau": "s - 0.5",
                                 "domain": [0, 1], "samples": 100}, "flip.json")
    assert run(["reconstruct", str(flip), "--mcoeffs"]) == 3


def test_timelike_warns_but_succeeds():
    result = invoke("analyze", CURVES / "timelike.json")
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    assert doc["frenet"]["causal"] == "timelike"
    assert "timelike" in result.stderr


def test_analyze_report_content():
    doc = json.loads(invoke("analyze", CURVES / "constant_ratio.json").stdout)
    assert doc["command"] == "analyze"
    assert doc["input"]["y"] == "(x^3 - 3/x)/12"
    cls = doc["classification"]
    assert cls["constant_ratio"]["verdict"] is True
    assert cls["constant_ratio"]["ratio"] == pytest.approx(3.0, abs=1e-9)
    assert cls["n_constant"]["verdict"] is False
    assert cls["t_constant"]["slope"] == pytest.approx(1.0, abs=1e-12)
    assert all(r["status"] != "fail" for r in doc["residuals"])


def test_analyze_csv_format(tmp_path):
    path = tmp_path / "series.csv"
    assert run(["analyze", str(CURVES / "constant_ratio.json"), "--csv", str(path),
                "--out", str(tmp_path / "r.json")]) == 0
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    lines = raw.decode().splitlines()
    assert lines[0] == "s,kappa,tau,m0,m1,m2,q,rho"
    assert len(lines) == 1002
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    assert np.allclose(data[:, 7], 3.0, rtol=1e-9)
    # floats round-trip exactly
    assert float(lines[1].split(",")[0]) == 0.5


@pytest.mark.parametrize("command, flag, suffix", [
    ("analyze", "--out", "json"),
    ("analyze", "--csv", "csv"),
    ("reconstruct", "--csv", "csv"),
    ("reconstruct", "--out", "json"),
    ("plot", "--svg", "svg"),
    ("verify", "--out", "json"),
])
def test_outputs_are_byte_identical(tmp_path, command, flag, suffix):
    spec = CURVES / ("salkowski.json" if command == "reconstruct" else "constant_ratio.json")
    blobs = []
    for i in range(2):
        path = tmp_path / f"out{i}.{suffix}"
        args = [command, str(spec), flag, str(path)]
        if command == "reconstruct" and flag == "--out":
            args += ["--csv", str(tmp_path / f"c{i}.csv")]
        assert run(args) == 0
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]


def test_svg_is_well_formed_and_projects(tmp_path):
    path = tmp_path / "circle.svg"
    assert run(["plot", str(CURVES / "circle.json"), "--svg", str(path),
                "--projection", "xz"]) == 0
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")
    assert root.get("width") == "800" and root.get("height") == "600"
    text = path.read_text()
    assert "circle" in text and "kappa" in text
    polylines = [el for el in root.iter() if el.tag.endswith("polyline")]
    assert len(polylines) == 1
    pts = np.array([[float(c) for c in p.split(",")] for p in polylines[0].get("points").split()])
    assert pts[:, 0].min() >= 40 and pts[:, 0].max() <= 760
    # the xz projection of (s, 0, s^2/2) is a convex parabola: y pixels fall, then never rise
    assert np.all(np.diff(pts[:, 0]) > 0) and np.all(np.diff(pts[:, 1]) < 0)


def test_plot_degenerate_curve_still_renders():
    result = invoke("plot", CURVES / "line.json")
    assert result.exit_code == 0
    assert "curvature undefined" in result.stdout


def test_reconstruct_csv_and_report(tmp_path):
    out = tmp_path / "report.json"
    result = invoke("reconstruct", CURVES / "helix_intrinsic.json", "--out", out, "--mcoeffs")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "s,x,y,z"
    doc = json.loads(out.read_text())
    assert doc["round_trip"]["kappa_error"] < 1e-3
    assert doc["frame_identities"]["det(T,N,B)-1"] < 1e-12
    assert doc["coefficients"]["closed_form_vs_rk4"] < 1e-6


def test_verify_table():
    result = invoke("verify", CURVES / "constant_ratio.json")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0].split() == ["identity", "sup-residual", "threshold", "status"]
    assert any(line.startswith("third-order tangent equation") and " pass" in line
               for line in lines)


def test_config_override(tmp_path):
    cfg = write_spec(tmp_path, {"ratio_ode": 1e-20, "ratio_identity": 1e-20}, "cfg.json")
    result = invoke("verify", CURVES / "constant_ratio.json", "--config", cfg)
    assert result.exit_code == 0
    assert "constant-ratio curvature ODE" in result.stdout
    row = next(line for line in result.stdout.splitlines()
               if line.startswith("constant-ratio curvature ODE"))
    assert row.rstrip().endswith("fail")
    bad = write_spec(tmp_path, {"no_such_tolerance": 1}, "bad.json")
    assert run(["verify", str(CURVES / "constant_ratio.json"), "--config", str(bad)]) == 2


def test_origin_flag_and_search(tmp_path):
    out = tmp_path / "r.json"
    assert run(["analyze", str(CURVES / "salkowski_tail.json"), "--origin", "0.25,0.25,-0.25",
                "--out", str(out)]) == 0
    fixed = json.loads(out.read_text())
    assert fixed["origin"] == [0.25, 0.25, -0.25]
    assert fixed["classification"]["n_constant"]["verdict"] is not True
    assert run(["analyze", str(CURVES / "salkowski_tail.json"), "--origin", "0.25,0.25,-0.25",
                "--origin-search", "--out", str(out)]) == 0
    searched = json.loads(out.read_text())
    assert searched["origin"] != fixed["origin"]
    spread = lambda doc: np.ptp(doc["decomposition"]["q_range"])  # noqa: E731
    assert spread(searched) < spread(fixed)


def test_entry_point_script():
    exe = shutil.which("pgc")
    cmd = [exe] if exe else [sys.executable, "-m", "pgcurves.cli"]
    proc = subprocess.run(cmd + ["--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "0.1.0" in proc.stdout
    proc = subprocess.run(cmd + ["analyze", str(CURVES / "line.json")], capture_output=True,
                          text=True)
    assert proc.returncode == 1
