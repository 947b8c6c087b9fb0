import json

import pytest

from minctrl import cli

GAMMA = "10"
RE_TABLE = "90.8059"
RE_SMALL = "2.0003"


def run(tmp_path, *args, name="out.json"):
    out = tmp_path / name
    code = cli.main([*args, "--out", str(out)])
    return code, out.read_text() if out.exists() else ""


class TestSolve:
    def test_table_minimum(self, tmp_path):
        code, text = run(tmp_path, "solve", "--gamma", GAMMA, "--re", RE_TABLE)
        assert code == 0
        record = json.loads(text)
        assert record["command"] == "solve"
        assert record["results"]["minimum"]["total_time"] == pytest.approx(7.38567, abs=1e-4)
        assert len(record["results"]["candidates"]) == 10
        labels = [c["label"] for c in record["results"]["candidates"]]
        assert labels[0] == "T+_{1,1}"

    def test_small_case(self, tmp_path):
        code, text = run(tmp_path, "solve", "--gamma", GAMMA, "--re", RE_SMALL)
        assert code == 0
        record = json.loads(text)
        assert record["results"]["minimum"]["total_time"] == pytest.approx(0.022364, abs=1e-5)
        assert record["results"]["minimum"]["n_turns"] == 0

    def test_invalid_re_exits_2(self, tmp_path, capsys):
        assert cli.main(["solve", "--gamma", GAMMA, "--re", "100.1"]) == 2
        err = capsys.readouterr().err
        assert "admissible interval" in err

    def test_invalid_gamma_exits_2(self, tmp_path):
        assert cli.main(["solve", "--gamma", "0.5", "--re", "2.5"]) == 2

    def test_no_extremal_exits_3(self, monkeypatch):
        from minctrl.solver import NoExtremalFound

        def boom(*a, **k):
            raise NoExtremalFound("nothing here")

        monkeypatch.setattr(cli, "minimize", boom)
        assert cli.main(["solve", "--gamma", GAMMA, "--re", RE_TABLE]) == 3

    def test_deterministic_output(self, tmp_path):
        _, first = run(tmp_path, "solve", "--gamma", GAMMA, "--re", RE_TABLE, name="a.json")
        _, second = run(tmp_path, "solve", "--gamma", GAMMA, "--re", RE_TABLE, name="b.json")
        assert first == second

    def test_csv_format(self, tmp_path):
        code, text = run(tmp_path, "solve", "--gamma", GAMMA, "--re", RE_TABLE,
                         "--format", "csv", name="out.csv")
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "label,switchings,branch,root_index,s,total_time"
        assert len(lines) == 11


class TestTrajectory:
    def test_csv_header_and_endpoints(self, tmp_path):
        code, text = run(tmp_path, "trajectory", "--gamma", GAMMA, "--re", RE_TABLE,
                         "--samples", "400", "--format", "csv", name="traj.csv")
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "t,x1,x2,u,E_over_E0"
        assert len(lines) == 401
        first = [float(v) for v in lines[1].split(",")]
        last = [float(v) for v in lines[-1].split(",")]
        assert first[:4] == [0.0, 1.0, 0.0, 1.0]
        assert first[4] == 1.0                      # initial energy is E0
        assert last[3] == pytest.approx(1e-4)       # control parked at u1 after T
        assert last[1] == pytest.approx(8.0, abs=0.05)
        # final row sits on the target curve
        r_e = 90.8059
        res = last[2] ** 2 + 1e-4 * last[1] ** 2 + 1.0 / last[1] ** 2 - 2.0 / r_e
        assert abs(res) < 1e-8
        assert last[4] == pytest.approx(1.0 / r_e, abs=1e-8)

    def test_two_samples_only_endpoints(self, tmp_path):
        code, text = run(tmp_path, "trajectory", "--gamma", GAMMA, "--re", RE_SMALL,
                         "--samples", "2", "--format", "csv", name="traj.csv")
        assert code == 0
        lines = text.strip().splitlines()
        assert len(lines) == 3
        assert [float(v) for v in lines[1].split(",")][1:3] == [1.0, 0.0]

    def test_samples_validation(self):
        assert cli.main(["trajectory", "--gamma", GAMMA, "--re", RE_SMALL,
                         "--samples", "1"]) == 2

    def test_json_rows(self, tmp_path):
        code, text = run(tmp_path, "trajectory", "--gamma", GAMMA, "--re", RE_SMALL,
                         "--samples", "5")
        record = json.loads(text)
        assert record["results"]["columns"] == ["t", "x1", "x2", "u", "E_over_E0"]
        assert len(record["results"]["rows"]) == 5


class TestRefrigerator:
    def test_worked_example(self, tmp_path):
        code, text = run(tmp_path, "refrigerator", "--omega-ratio", "100",
                         "--tc", "0.01", "--th", "0.8218")
        assert code == 0
        record = json.loads(text)
        assert record["results"]["classification"] == "critical"
        assert record["results"]["r_E"] == pytest.approx(90.8059, abs=2e-3)
        assert record["results"]["min_driving_time"] == pytest.approx(7.38567, abs=1e-4)

    def test_reservoir_ordering_exits_2(self):
        assert cli.main(["refrigerator", "--omega-ratio", "100",
                         "--tc", "1.0", "--th", "0.5"]) == 2

    def test_zero_classification_reported(self, tmp_path):
        code, text = run(tmp_path, "refrigerator", "--omega-ratio", "1.2",
                         "--tc", "1.0", "--th", "1.05")
        assert code == 0
        record = json.loads(text)
        assert record["results"]["classification"] == "zero"
        assert record["results"]["min_driving_time"] == 0.0


class TestAvailability:
    def test_single_query(self, tmp_path):
        code, text = run(tmp_path, "availability", "--gamma", GAMMA,
                         "--ed-ratio", str(1.0 / 2.0003))
        assert code == 0
        record = json.loads(text)
        [point] = record["results"]["points"]
        assert point["min_time"] == pytest.approx(0.022364, abs=1e-5)

    def test_sweep(self, tmp_path):
        code, text = run(tmp_path, "availability", "--gamma", GAMMA,
                         "--sweep", "0.1:0.4:4", "--nmax", "3")
        assert code == 0
        record = json.loads(text)
        points = record["results"]["points"]
        assert len(points) == 4
        assert [p["ed_ratio"] for p in points] == pytest.approx([0.1, 0.2, 0.3, 0.4])
        assert all(p["work_fraction"] == pytest.approx(1.0 - p["ed_ratio"]) for p in points)

    def test_requires_query(self):
        assert cli.main(["availability", "--gamma", GAMMA]) == 2

    def test_bad_sweep_exits_2(self):
        assert cli.main(["availability", "--gamma", GAMMA, "--sweep", "oops"]) == 2


class TestVerify:
    def test_small_case_with_grid(self, tmp_path):
        code, text = run(tmp_path, "verify", "--gamma", GAMMA, "--re", RE_SMALL,
                         "--grid", "1", "--horizon", "0.05")
        assert code == 0
        record = json.loads(text)
        assert record["results"]["passed"] is True
        grid = record["results"]["grid_search"]
        assert grid["grid_min_time"] == pytest.approx(0.022364, abs=1e-3)
        assert grid["lower_bound_ok"] and grid["agreement_ok"]

    def test_table_case_passes(self, tmp_path):
        code, text = run(tmp_path, "verify", "--gamma", GAMMA, "--re", RE_TABLE)
        assert code == 0
        report = json.loads(text)["results"]["report"]
        assert report["failures"] == []
        assert report["endpoint_residual_rk4"] < 1e-7

    def test_corrupted_config_exits_4(self, tmp_path, monkeypatch, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("root_tol = 1e-2\n")
        monkeypatch.setenv("MINCTRL_CONFIG", str(cfg))
        assert cli.main(["verify", "--gamma", GAMMA, "--re", RE_TABLE]) == 4
        assert "residual" in capsys.readouterr().err

    def test_config_file_overridden_by_flags(self, tmp_path, monkeypatch):
        cfg = tmp_path / "ok.cfg"
        cfg.write_text("# comment line\nn_max = 1\nscan_points = 30000\n")
        monkeypatch.setenv("MINCTRL_CONFIG", str(cfg))
        code, text = run(tmp_path, "solve", "--gamma", GAMMA, "--re", RE_TABLE)
        assert code == 0
        assert json.loads(text)["inputs"]["n_max"] == 1
        code, text = run(tmp_path, "solve", "--gamma", GAMMA, "--re", RE_TABLE,
                         "--nmax", "2", name="b.json")
        assert json.loads(text)["inputs"]["n_max"] == 2
