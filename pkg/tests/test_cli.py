import json
import math
import subprocess
import sys

import numpy as np
import pytest

from neumannkit import (Circle, Configuration, Disk, NeumannKernel, Scheme,
                        energy_report, realize)
from neumannkit.cli import main

TWO_PI = 2 * math.pi


@pytest.fixture
def two_circles_config(tmp_path):
    cfg = Configuration(Disk(), (Circle(0.3, (), 1.0), Circle(0.6, (), -1.0)),
                        (0.0, TWO_PI / 3, 2 * TWO_PI / 3), Scheme.EQUAL)
    path = tmp_path / "two_circles.json"
    path.write_text(cfg.to_json(indent=2))
    return path, cfg


class TestKernelEval:
    def test_values_match_library(self, tmp_path):
        cfg = {"domain": {"kind": "disk"},
               "pairs": [[[0.5, 0.0], [-0.5, 0.0]], [[0.1, 0.2], [0.3, -0.4]]]}
        cpath = tmp_path / "ke.json"
        cpath.write_text(json.dumps(cfg))
        out = tmp_path / "out.json"
        rc = main(["kernel-eval", "--config", str(cpath), "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        k = NeumannKernel(Disk())
        for val, (p, q) in zip(payload["values"], cfg["pairs"]):
            assert val == k.pair(np.array(p), np.array(q))


class TestEnergy:
    def test_report_matches_library_to_last_digit(self, two_circles_config, tmp_path):
        cpath, cfg = two_circles_config
        out = tmp_path / "energy.json"
        rc = main(["energy", "--config", str(cpath), "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        pts, ch = realize(cfg)
        rep = energy_report(NeumannKernel(cfg.domain), pts, ch)
        assert payload["en"] == rep.en
        assert payload["qn"] == rep.qn
        assert payload["a"] == list(rep.a)


class TestVerify:
    def test_disk_all_pass(self, tmp_path):
        out = tmp_path / "verify.json"
        rc = main(["verify", "--domain", "disk", "--seed", "1", "--out", str(out)])
        payload = json.loads(out.read_text())
        assert payload["all_passed"] is True
        assert rc == 0

    def test_ball3_all_pass(self, tmp_path):
        out = tmp_path / "verify.json"
        rc = main(["verify", "--domain", "ball3", "--seed", "1", "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        names = [c["name"] for c in payload["checks"]]
        assert "fd_laplacian" in names and "boundary_flux" in names

    def test_byte_identical_reruns(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        assert main(["verify", "--domain", "disk", "--seed", "3", "--out", str(a)]) == 0
        assert main(["verify", "--domain", "disk", "--seed", "3", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_impossible_tolerance_fails_with_exit_1(self, tmp_path):
        rc = main(["verify", "--domain", "disk", "--seed", "1",
                   "--tol", "fd_laplacian=1e-30", "--out", str(tmp_path / "v.json")])
        assert rc == 1

    def test_missing_domain_is_usage_error(self, tmp_path):
        assert main(["verify", "--out", str(tmp_path / "v.json")]) == 2


class TestTrials:
    def test_csv_and_summary(self, two_circles_config, tmp_path):
        cpath, cfg = two_circles_config
        out = tmp_path / "trials.csv"
        summary = tmp_path / "summary.json"
        rc = main(["trials", "--config", str(cpath), "--n", "50", "--seed", "42",
                   "--out", str(out), "--summary-out", str(summary)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 51
        s = json.loads(summary.read_text())
        assert s["min_gap"] >= -1e-9
        assert s["pass_rate"] == 1.0

    def test_byte_identical_reruns(self, two_circles_config, tmp_path):
        cpath, _ = two_circles_config
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        main(["trials", "--config", str(cpath), "--n", "20", "--seed", "7",
              "--out", str(a)])
        main(["trials", "--config", str(cpath), "--n", "20", "--seed", "7",
              "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_m_override(self, two_circles_config, tmp_path):
        cpath, _ = two_circles_config
        out = tmp_path / "trials.csv"
        rc = main(["trials", "--config", str(cpath), "--n", "10", "--seed", "1",
                   "--m", "4", "--out", str(out)])
        assert rc == 0
        assert out.read_text().splitlines()[1].split(",")[1] == "4"

    def test_plot(self, two_circles_config, tmp_path):
        pytest.importorskip("matplotlib")
        cpath, _ = two_circles_config
        png = tmp_path / "gaps.png"
        rc = main(["trials", "--config", str(cpath), "--n", "10", "--seed", "1",
                   "--out", str(tmp_path / "t.csv"), "--plot", str(png)])
        assert rc == 0 and png.exists()


class TestSearch:
    def test_search_does_not_beat_symmetric(self, tmp_path):
        cfg = Configuration(Disk(), (Circle(0.5, (), 1.0),),
                            (0.0, math.pi), Scheme.ALTERNATING)
        cpath = tmp_path / "cfg.json"
        cpath.write_text(cfg.to_json())
        out = tmp_path / "search.json"
        rc = main(["search", "--config", str(cpath), "--seed", "1",
                   "--restarts", "5", "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        assert payload["beats_symmetric"] is False


class TestExitCodes:
    def test_missing_config_exits_2(self, tmp_path):
        assert main(["energy", "--config", str(tmp_path / "nope.json")]) == 2

    def test_invalid_json_exits_2(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{не json")
        assert main(["energy", "--config", str(p)]) == 2

    def test_bad_domain_token_exits_2(self, tmp_path):
        assert main(["verify", "--domain", "cube", "--out",
                     str(tmp_path / "v.json")]) == 2

    def test_invalid_configuration_exits_2(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({
            "domain": {"kind": "disk"},
            "circles": [{"r0": 0.5, "x_prime0": [], "magnitude": 1.0}],
            "angles": [0.0, 1.0, 2.0],
            "scheme": "alternating",
        }))
        assert main(["energy", "--config", str(p)]) == 2

    def test_usage_error_exits_2(self):
        assert main(["not-a-command"]) == 2

    def test_module_entrypoint(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "neumannkit.cli", "verify", "--domain",
             "disk", "--seed", "1", "--out", str(tmp_path / "v.json")],
            capture_output=True)
        assert proc.returncode == 0
