import json
import subprocess
import sys

import numpy as np
import pytest

from mabody import save_body
from mabody.cli import main
from mabody.verify import disk, interval, square


@pytest.fixture()
def square_path(tmp_path):
    path = tmp_path / "square.json"
    save_body(square(), path)
    return str(path)


@pytest.fixture()
def interval_path(tmp_path):
    path = tmp_path / "interval.json"
    save_body(interval(), path)
    return str(path)


def run_cli(args):
    """Invoke the CLI in a subprocess; returns (exit_code, stdout, stderr)."""
    proc = subprocess.run([sys.executable, "-m", "mabody.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


class TestBstarCommand:
    def test_basic(self, square_path, capsys):
        rc = main(["bstar", "--body", square_path, "--x", "0.3,0.2",
                   "--y", "1,2"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["bstar"] * out["delta_b"] == pytest.approx(1.0)
        assert len(out["witness_a"]) == 2

    def test_exterior_point_precondition(self, square_path, capsys):
        rc = main(["bstar", "--body", square_path, "--x", "1.5,0",
                   "--y", "1,0"])
        assert rc == 3

    def test_zero_direction_precondition(self, square_path):
        rc = main(["bstar", "--body", square_path, "--x", "0,0", "--y", "0,0"])
        assert rc == 3

    def test_bad_vector(self, square_path):
        rc = main(["bstar", "--body", square_path, "--x", "a,b", "--y", "1,0"])
        assert rc == 2

    def test_missing_body_file(self, tmp_path):
        rc = main(["bstar", "--body", str(tmp_path / "nope.json"),
                   "--x", "0,0", "--y", "1,0"])
        assert rc == 2

    def test_malformed_body_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        rc = main(["bstar", "--body", str(path), "--x", "0,0", "--y", "1,0"])
        assert rc == 2


class TestDensityCommand:
    def test_csv_written(self, square_path, tmp_path, capsys):
        out = tmp_path / "d.csv"
        rc = main(["density", "--body", square_path, "--grid", "11",
                   "--out", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "x1,x2,lambda"
        assert len(lines) > 50

    def test_deterministic_output(self, square_path, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            rc, _, _ = run_cli(["density", "--body", square_path,
                                "--grid", "11", "--out", str(out)])
            assert rc == 0
        assert a.read_bytes() == b.read_bytes()

    def test_svg_written(self, square_path, tmp_path):
        out = tmp_path / "d.csv"
        svg = tmp_path / "d.svg"
        rc = main(["density", "--body", square_path, "--grid", "9",
                   "--out", str(out), "--svg", str(svg)])
        assert rc == 0
        text = svg.read_text()
        assert text.startswith("<svg")
        assert text.rstrip().endswith("</svg>")
        assert text.count("<rect") > 40

    def test_unwritable_output(self, square_path, tmp_path):
        rc, _, err = run_cli(["density", "--body", square_path, "--grid", "9",
                              "--out", str(tmp_path / "no" / "dir" / "x.csv")])
        assert rc == 4


class TestMassCommand:
    def test_single_line_json(self, interval_path, capsys):
        rc = main(["mass", "--body", interval_path, "--grid", "201"])
        assert rc == 0
        out = capsys.readouterr().out
        assert len(out.strip().splitlines()) == 1
        data = json.loads(out)
        assert data["target"] == pytest.approx(2 * np.pi)
        assert data["rel_error"] < 0.01


class TestVerifyCommand:
    def test_unknown_suite(self):
        rc, _, err = run_cli(["verify", "nosuch"])
        assert rc == 2
        assert "unknown suite" in err

    def test_mass_suite_fast_tap_output(self):
        rc, out, _ = run_cli(["verify", "mass", "--fast"])
        assert rc == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("1..")
        assert all(l.startswith(("ok", "not ok")) for l in lines[1:])


def test_config_env_override(square_path, tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bisection_rel_tol": 1e-3}))
    monkeypatch.setenv("MABODY_CONFIG", str(cfg))
    rc = main(["bstar", "--body", square_path, "--x", "0,0", "--y", "0,1",
               "--method", "bisect"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["bstar"] == pytest.approx(1.0, rel=2e-3)


def test_config_unknown_key_rejected(tmp_path):
    from mabody.config import Config

    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"no_such_knob": 1}))
    with pytest.raises(ValueError):
        Config.from_file(str(cfg))
