import json

import pytest

from kerrqed.cli import ConfigError, list_experiments, load_config, main, run
from kerrqed.units import (
    UnitError,
    parse_frequency,
    parse_quantity,
    parse_temperature,
    parse_time,
)


class TestUnits:
    def test_frequency(self):
        assert parse_frequency("5 GHz") == 5e9
        assert parse_frequency("0.12 MHz") == pytest.approx(0.12e6)
        assert parse_frequency("-3 kHz") == -3e3
        assert parse_frequency("1e3 Hz") == 1e3

    def test_time_and_temperature(self):
        assert parse_time("400 ns") == pytest.approx(400e-9)
        assert parse_time("1.5 us") == pytest.approx(1.5e-6)
        assert parse_temperature("50 mK") == pytest.approx(0.05)
        assert parse_temperature("4 K") == 4.0

    def test_strictness(self):
        with pytest.raises(UnitError):
            parse_frequency(5e9)  # bare numbers rejected
        with pytest.raises(UnitError):
            parse_frequency("5 Ghz")  # unit case matters
        with pytest.raises(UnitError):
            parse_time("5 GHz")
        with pytest.raises(UnitError):
            parse_frequency("fast")
        with pytest.raises(ValueError):
            parse_quantity("5 m", "length")


def write_config(tmp_path, doc, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def shift_config(tmp_path, count=3, **extra):
    doc = {
        "experiment": "shift_sweep",
        "params": {"nu_q": "5 GHz", "nu_r": "8 GHz", "n_max": 6},
        "grid": [
            {"name": "g_X", "start": "0 MHz", "stop": "100 MHz", "count": count},
            {"name": "g_P", "start": "0 MHz", "stop": "100 MHz", "count": count},
        ],
    }
    doc.update(extra)
    return write_config(tmp_path, doc)


def read_rows(path):
    lines = [l for l in open(path).read().splitlines() if not l.startswith("#")]
    return lines[0].split(","), [l.split(",") for l in lines[1:]]


class TestConfigParsing:
    def test_unknown_experiment_nearest_match(self, tmp_path):
        path = write_config(tmp_path, {"experiment": "shift_sweap"})
        with pytest.raises(ConfigError, match="shift_sweep"):
            load_config(path)

    def test_missing_required_param(self, tmp_path):
        path = write_config(
            tmp_path,
            {
                "experiment": "shift_sweep",
                "params": {"nu_q": "5 GHz"},
                "grid": [{"name": "g_X", "start": "0 MHz", "stop": "1 MHz", "count": 2}],
            },
        )
        with pytest.raises(ConfigError, match="nu_r"):
            load_config(path)

    def test_bare_number_frequency_rejected(self, tmp_path):
        path = write_config(
            tmp_path,
            {
                "experiment": "shift_sweep",
                "params": {"nu_q": 5e9, "nu_r": "8 GHz"},
                "grid": [{"name": "g_X", "start": "0 MHz", "stop": "1 MHz", "count": 2}],
            },
        )
        with pytest.raises(ConfigError, match="nu_q"):
            load_config(path)

    def test_bad_grid_axis(self, tmp_path):
        path = shift_config(tmp_path)
        doc = json.loads(open(path).read())
        doc["grid"][0]["name"] = "nu_q"
        with pytest.raises(ConfigError, match="not sweepable"):
            load_config(write_config(tmp_path, doc, "bad.json"))

    def test_count_minimum(self, tmp_path):
        path = shift_config(tmp_path)
        doc = json.loads(open(path).read())
        doc["grid"][0]["count"] = 1
        with pytest.raises(ConfigError, match="count"):
            load_config(write_config(tmp_path, doc, "bad.json"))

    def test_invalid_json_diagnostics(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"experiment": }')
        with pytest.raises(ConfigError, match="line"):
            load_config(str(path))


class TestRun:
    def test_shift_sweep_csv(self, tmp_path):
        out = tmp_path / "out.csv"
        status = run(shift_config(tmp_path), out_path=str(out), fmt="csv")
        assert status == 0
        columns, rows = read_rows(out)
        assert columns == ["g_X", "g_P", "chi_Hz", "chi_prime_Hz", "fail"]
        assert len(rows) == 9
        # row-major order: g_X slowest
        assert [r[0] for r in rows[:3]] == ["0.0", "0.0", "0.0"]
        meta = [l for l in open(out).read().splitlines() if l.startswith("#")]
        assert any(l.startswith("# config:") for l in meta)

    def test_determinism_and_parallel_order(self, tmp_path):
        cfg = shift_config(tmp_path)
        out1, out2, out3 = (tmp_path / f"o{i}.csv" for i in range(3))
        run(cfg, out_path=str(out1), fmt="csv", jobs=1)
        run(cfg, out_path=str(out2), fmt="csv", jobs=1)
        run(cfg, out_path=str(out3), fmt="csv", jobs=4)
        strip = lambda p: [l for l in open(p).read().splitlines() if not l.startswith("# wall")]
        assert strip(out1) == strip(out2) == strip(out3)

    def test_json_format(self, tmp_path):
        out = tmp_path / "out.json"
        run(shift_config(tmp_path), out_path=str(out), fmt="json")
        doc = json.loads(open(out).read())
        assert doc["columns"][0] == "g_X"
        assert len(doc["rows"]) == 9
        assert "config" in doc["metadata"]

    def test_readout_sim_rows(self, tmp_path):
        path = write_config(
            tmp_path,
            {
                "experiment": "readout_sim",
                "params": {
                    "kappa": "3 MHz",
                    "chi_prime": "0.1 MHz",
                    "n_steady": 15,
                    "t_end": "400 ns",
                },
            },
        )
        out = tmp_path / "ro.csv"
        assert run(path, out_path=str(out), fmt="csv") == 0
        columns, rows = read_rows(out)
        assert columns[:3] == ["t_s", "alpha0_re", "alpha0_im"]
        assert len(rows) > 100

    def test_failed_point_exit_code_and_keep_going(self, tmp_path):
        # the last E_C_delta value makes E_C2 = 0, an invalid parameter set
        path = write_config(
            tmp_path,
            {
                "experiment": "cpt_sweep",
                "params": {
                    "E_J_sigma": "18 GHz",
                    "E_C_sigma": "10 GHz",
                    "E_Cr": "10 GHz",
                    "E_Lr": "100 GHz",
                    "n_g": 0.5,
                    "phi_ext": 3.0,
                },
                "grid": [
                    {"name": "E_C_delta", "start": "0 GHz", "stop": "10 GHz", "count": 3}
                ],
            },
        )
        out = tmp_path / "cpt.csv"
        assert run(path, out_path=str(out), fmt="csv") == 2
        assert run(path, out_path=str(out), fmt="csv", keep_going=True) == 0
        columns, rows = read_rows(out)
        fail_col = columns.index("fail")
        assert rows[0][fail_col] == ""
        assert rows[2][fail_col] != ""

    def test_log_scale_axis(self, tmp_path):
        path = write_config(
            tmp_path,
            {
                "experiment": "dephasing_curve",
                "params": {"chi_prime": "1 MHz", "kappa": "3 MHz", "nu_r": "7 GHz"},
                "grid": [
                    {"name": "T", "start": "10 mK", "stop": "1 K", "count": 5, "scale": "log"}
                ],
            },
        )
        out = tmp_path / "deph.csv"
        assert run(path, out_path=str(out), fmt="csv") == 0
        _, rows = read_rows(out)
        temps = [float(r[0]) for r in rows]
        ratios = [b / a for a, b in zip(temps, temps[1:])]
        assert all(r == pytest.approx(ratios[0], rel=1e-9) for r in ratios)


class TestMain:
    def test_list(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        for name in (
            "shift_sweep",
            "cpt_sweep",
            "dephasing_curve",
            "readout_sim",
            "kappa_sweep",
            "overlap_scan",
        ):
            assert name in out
        assert list_experiments().count("\n") == 5

    def test_config_error_exit_1(self, tmp_path, capsys):
        path = write_config(tmp_path, {"experiment": "nope"})
        assert main(["run", path]) == 1
        assert "config error" in capsys.readouterr().err

    def test_run_to_stdout(self, tmp_path, capsys):
        assert main(["run", shift_config(tmp_path, count=2)]) == 0
        out = capsys.readouterr().out
        assert "chi_Hz" in out
