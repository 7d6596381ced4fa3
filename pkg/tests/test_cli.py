"""End-to-end command-line behavior and exit codes."""

import json
from pathlib import Path

import pytest

from pensim.cli import main

REPO = Path(__file__).resolve().parents[1]
DEMO = REPO / "scenarios" / "demo_base.ini"

FLAT_CURVE = "maturity_years,real_spot_rate_pct\n1,2.0\n2,2.0\n3,2.0\n"

CONSTANT_PANEL = (
    "country,year,eq_tr,inflation,population,rgdppc\n"
    "a,2000,0.02,0.0,10,3\n"
    "b,2000,0.02,0.0,20,1\n"
    "a,2001,0.02,0.0,10,3\n"
    "b,2001,0.02,0.0,20,1\n"
    "a,2002,0.02,0.0,10,3\n"
    "b,2002,0.02,0.0,20,1\n"
)


class TestSimulate:
    def test_demo_scenario_end_to_end(self, tmp_path, capsys, monkeypatch):
        monkeypatch.chdir(tmp_path)
        rc = main(
            ["simulate", str(DEMO), "--paths", "60", "--seed", "5", "--out", "o"]
        )
        out = capsys.readouterr().out
        assert rc == 0
        assert "scenario: demo-base" in out
        assert "overall exhaustion probability" in out
        for name in (
            "fan.csv",
            "exhaustion.csv",
            "surplus.csv",
            "fan.svg",
            "summary.json",
        ):
            assert (tmp_path / "o" / name).is_file()

    def test_worker_count_leaves_outputs_identical(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        args = ["simulate", str(DEMO), "--paths", "40", "--seed", "5"]
        assert main(args + ["--out", "o1", "--workers", "1"]) == 0
        assert main(args + ["--out", "o2", "--workers", "2"]) == 0
        for name in ("fan.csv", "exhaustion.csv", "surplus.csv", "fan.svg"):
            assert (tmp_path / "o1" / name).read_bytes() == (
                tmp_path / "o2" / name
            ).read_bytes()

    def test_missing_scenario_file_exits_2(self, tmp_path, capsys):
        rc = main(["simulate", str(tmp_path / "absent.ini")])
        assert rc == 2
        assert "data file error" in capsys.readouterr().err

    def test_malformed_scenario_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.ini"
        bad.write_text("[fund]\ninitial_assets_gbp_bn = sixty\n")
        rc = main(["simulate", str(bad)])
        assert rc == 1
        assert "configuration error" in capsys.readouterr().err


class TestSweep:
    def test_single_alpha_matches_simulate_exhaustion(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        base = [str(DEMO), "--paths", "80", "--seed", "5"]
        assert main(["simulate"] + base + ["--out", "o1"]) == 0
        assert main(["sweep"] + base + ["--out", "o2", "--alphas", "0.75"]) == 0
        exhaustion = (tmp_path / "o1" / "exhaustion.csv").read_text().splitlines()
        sweep = (tmp_path / "o2" / "sweep.csv").read_text().splitlines()
        assert sweep[0] == "year,alpha_0.75"
        assert [r.split(",")[1] for r in sweep[1:]] == [
            r.split(",")[1] for r in exhaustion[1:]
        ]

    def test_alpha_outside_unit_interval_exits_1(self, capsys):
        rc = main(["sweep", str(DEMO), "--paths", "10", "--alphas", "0.5,1.5"])
        assert rc == 1
        assert "outside [0, 1]" in capsys.readouterr().err

    def test_unparseable_alphas_exit_1(self, capsys):
        rc = main(["sweep", str(DEMO), "--paths", "10", "--alphas", "lots"])
        assert rc == 1
        assert "--alphas" in capsys.readouterr().err


class TestEstimateReturns:
    def test_constant_panel_moments(self, tmp_path, capsys, monkeypatch):
        monkeypatch.chdir(tmp_path)
        panel = tmp_path / "panel.csv"
        panel.write_text(CONSTANT_PANEL)
        rc = main(
            ["estimate-returns", str(panel), "--method", "unweighted-pooled"]
        )
        out = capsys.readouterr().out
        assert rc == 0
        assert "mean: 2%  sd: 0%" in out
        assert "years: 2000-2002  observations: 6" in out
        written = json.loads((tmp_path / "moments.json").read_text())
        assert written["mean_pct"] == pytest.approx(2.0)
        assert written["sd_pct"] == pytest.approx(0.0)
        assert written["method"] == "unweighted-pooled"

    def test_weighted_method_collapses_years(self, tmp_path, capsys):
        panel = tmp_path / "panel.csv"
        panel.write_text(CONSTANT_PANEL)
        rc = main(
            [
                "estimate-returns",
                str(panel),
                "--method",
                "gdp-weighted-portfolio",
                "--out",
                str(tmp_path),
            ]
        )
        assert rc == 0
        assert "observations: 3" in capsys.readouterr().out

    def test_columns_remap(self, tmp_path, capsys):
        panel = tmp_path / "panel.csv"
        panel.write_text(
            CONSTANT_PANEL.replace(
                "country,year,eq_tr,inflation,population,rgdppc",
                "country,year,eq_tr,inflation,pop,gdp",
            )
        )
        rc = main(
            [
                "estimate-returns",
                str(panel),
                "--method",
                "unweighted-pooled",
                "--columns",
                "population=pop,rgdppc=gdp",
                "--out",
                str(tmp_path),
            ]
        )
        assert rc == 0

    def test_bad_columns_value_exits_1(self, tmp_path, capsys):
        panel = tmp_path / "panel.csv"
        panel.write_text(CONSTANT_PANEL)
        rc = main(
            [
                "estimate-returns",
                str(panel),
                "--method",
                "unweighted-pooled",
                "--columns",
                "population",
            ]
        )
        assert rc == 1
        assert "--columns" in capsys.readouterr().err

    def test_missing_panel_exits_2(self, tmp_path, capsys):
        rc = main(
            [
                "estimate-returns",
                str(tmp_path / "absent.csv"),
                "--method",
                "unweighted-pooled",
            ]
        )
        assert rc == 2

    def test_method_is_required(self, tmp_path, capsys):
        panel = tmp_path / "panel.csv"
        panel.write_text(CONSTANT_PANEL)
        assert main(["estimate-returns", str(panel)]) == 1


class TestYield:
    def test_flat_curve_series(self, tmp_path, capsys):
        curve = tmp_path / "curve.csv"
        curve.write_text(FLAT_CURVE)
        rc = main(["yield", str(curve), "--delta", "0"])
        assert rc == 0
        assert capsys.readouterr().out.splitlines() == [
            "period,discount_factor,gross_return",
            "0,1,",
            "1,1.02,1.02",
            "2,1.0404,1.02",
            "3,1.06121,1.02",
        ]

    def test_horizon_extends_past_last_maturity(self, tmp_path, capsys):
        curve = tmp_path / "curve.csv"
        curve.write_text(FLAT_CURVE)
        rc = main(["yield", str(curve), "--delta", "0", "--horizon", "5"])
        lines = capsys.readouterr().out.splitlines()
        assert rc == 0
        assert len(lines) == 1 + 6
        assert lines[-1].split(",")[2] == "1.02"

    def test_bad_horizon_exits_1(self, tmp_path, capsys):
        curve = tmp_path / "curve.csv"
        curve.write_text(FLAT_CURVE)
        assert main(["yield", str(curve), "--horizon", "0"]) == 1

    def test_missing_curve_exits_2(self, tmp_path):
        assert main(["yield", str(tmp_path / "absent.csv")]) == 2


class TestParserBasics:
    def test_no_arguments_exits_1(self, capsys):
        assert main([]) == 1

    def test_unknown_subcommand_exits_1(self, capsys):
        assert main(["summon"]) == 1

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "pensim" in capsys.readouterr().out
