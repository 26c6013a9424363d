"""End-to-end command tests, run in process through main(argv)."""

import json
import math
import os

import numpy as np
import pytest

import berrysim.cli as cli
from berrysim.cli import main

HYBRID_HEADER = ("scenario,theta,mu,B,omega,j,m,branch,alpha,concurrence,"
                 "action_numeric,action_closed,gamma_berry,gamma_mixed,"
                 "bound_ratio")
OSC_HEADER = ("scenario,nu,g,beta,omega,n,branch,alpha,concurrence,"
              "action_numeric,action_closed,gamma_berry,gamma_mixed,"
              "bound_ratio")


def _read(path):
    with open(path) as fh:
        return fh.read()


class TestVerify:
    def test_classical_all_rows_pass(self, capsys):
        rc = main(["verify", "--scenario", "classical"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "6/6 checks passed" in out
        for name in ("gamma_berry", "action", "concurrence", "gamma_mixed",
                     "return_fidelity", "min_fidelity"):
            assert name in out
        assert "FAIL" not in out

    def test_numeric_mismatch_sets_exit_one(self, capsys, monkeypatch):
        real = cli.hybrid_point

        def skewed(**kw):
            pt = dict(real(**kw))
            pt["gamma_berry"] = pt["gamma_berry"] + 0.1
            return pt

        monkeypatch.setattr(cli, "hybrid_point", skewed)
        rc = main(["verify", "--scenario", "hybrid"])
        out = capsys.readouterr().out
        assert rc == 1
        assert "FAIL" in out
        assert "5/6 checks passed" in out

    def test_verify_table_to_file(self, capsys, tmp_path):
        target = tmp_path / "table.csv"
        rc = main(["verify", "--scenario", "classical",
                   "--output", str(target)])
        capsys.readouterr()
        assert rc == 0
        lines = _read(target).splitlines()
        assert lines[0] == "quantity,closed,numeric,abs_delta,tolerance,status"
        assert len(lines) == 7

    def test_edge_branch_conflict_is_config_error(self, capsys):
        rc = main(["verify", "--scenario", "hybrid", "--m", "0.5",
                   "--branch", "-"])
        assert rc == 2
        assert "error:" in capsys.readouterr().err


class TestSweep:
    def test_deterministic_bytes(self, capsys, tmp_path):
        args = ["sweep", "--scenario", "classical", "--sweep-param", "theta",
                "--start", "0.3", "--stop", "1.2", "--steps", "3",
                "--samples-per-period", "400"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--output", str(a)]) == 0
        assert main(args + ["--output", str(b)]) == 0
        capsys.readouterr()
        assert _read(a) == _read(b)
        assert _read(a).splitlines()[0] == HYBRID_HEADER

    def test_oscillator_columns(self, capsys, tmp_path):
        target = tmp_path / "osc.csv"
        rc = main(["sweep", "--scenario", "oscillator", "--sweep-param", "n",
                   "--start", "0", "--stop", "1", "--steps", "2",
                   "--nmax", "30", "--omega", "0.01",
                   "--samples-per-period", "400", "--output", str(target)])
        capsys.readouterr()
        assert rc == 0
        lines = _read(target).splitlines()
        assert lines[0] == OSC_HEADER
        assert len(lines) == 3
        assert lines[1].startswith("oscillator,")

    def test_single_point_matches_verify_bytes(self, capsys, tmp_path):
        rc = main(["verify", "--scenario", "hybrid"])
        verify_out = capsys.readouterr().out
        assert rc == 0
        target = tmp_path / "point.csv"
        rc = main(["sweep", "--scenario", "hybrid", "--sweep-param", "omega",
                   "--start", "0.001", "--stop", "0.001", "--steps", "1",
                   "--output", str(target)])
        capsys.readouterr()
        assert rc == 0
        header, row = [ln.split(",") for ln in _read(target).splitlines()]
        cell = dict(zip(header, row))
        # the sweep row and the verify table come from one scenario driver
        for quantity in ("gamma_berry", "action_numeric", "action_closed",
                         "concurrence", "gamma_mixed"):
            assert cell[quantity] in verify_out

    def test_json_format(self, capsys, tmp_path):
        target = tmp_path / "sweep.json"
        rc = main(["sweep", "--scenario", "classical", "--sweep-param", "B",
                   "--start", "0.5", "--stop", "1.5", "--steps", "2",
                   "--samples-per-period", "400", "--format", "json",
                   "--output", str(target)])
        capsys.readouterr()
        assert rc == 0
        rows = json.loads(_read(target))
        assert len(rows) == 2
        assert list(rows[0]) == HYBRID_HEADER.split(",")
        assert rows[0]["scenario"] == "classical"
        assert rows[0]["B"] == pytest.approx(0.5)

    def test_tradeoff_follows_coupling_ramp(self, capsys, tmp_path):
        target = tmp_path / "ramp.csv"
        rc = main(["sweep", "--scenario", "tradeoff", "--steps", "4",
                   "--samples-per-period", "400", "--output", str(target)])
        out = capsys.readouterr().out
        assert rc == 0
        assert "wrote 4 rows" in out
        lines = _read(target).splitlines()
        assert lines[0] == HYBRID_HEADER
        concs = [float(ln.split(",")[9]) for ln in lines[1:]]
        assert all(a > b for a, b in zip(concs, concs[1:]))


class TestEvolve:
    def test_columns_and_equator_crossing(self, capsys, tmp_path):
        target = tmp_path / "traj.csv"
        rc = main(["evolve", "--scenario", "classical", "--theta", "90",
                   "--degrees", "--samples-per-period", "400",
                   "--output", str(target)])
        capsys.readouterr()
        assert rc == 0
        lines = _read(target).splitlines()
        assert lines[0] == "t,norm,fidelity,delta_e,phi_dynamic,gamma_noncyclic"
        first = [float(x) for x in lines[1].split(",")]
        last = [float(x) for x in lines[-1].split(",")]
        omega = 1e-3
        assert first[0] == 0.0
        assert last[0] == pytest.approx(2.0 * math.pi / omega, rel=1e-12)
        assert last[1] == pytest.approx(1.0, abs=1e-6)    # norm
        assert last[2] == pytest.approx(1.0, abs=1e-6)    # fidelity
        assert last[3] == pytest.approx(0.5 * omega, rel=1e-6)
        # equator run ends a half-turn away, wrapped to the negative side
        assert abs(abs(last[5]) - math.pi) <= 5e-3

    def test_amplitude_columns(self, capsys, tmp_path):
        target = tmp_path / "amp.csv"
        rc = main(["evolve", "--scenario", "classical", "--amplitudes",
                   "--samples-per-period", "400", "--output", str(target)])
        capsys.readouterr()
        assert rc == 0
        header = _read(target).splitlines()[0]
        assert header == ("t,re_0,im_0,re_1,im_1,"
                          "norm,fidelity,delta_e,phi_dynamic,gamma_noncyclic")

    def test_tradeoff_not_evolvable(self, capsys):
        rc = main(["evolve", "--scenario", "tradeoff"])
        assert rc == 2
        assert "error:" in capsys.readouterr().err


class TestConfigResolution:
    def test_degrees_flag_matches_radians(self, capsys):
        rc = main(["verify", "--scenario", "classical", "--theta", "90",
                   "--degrees"])
        out_deg = capsys.readouterr().out
        assert rc == 0
        rc = main(["verify", "--scenario", "classical",
                   "--theta", "1.5707963267948966"])
        out_rad = capsys.readouterr().out
        assert rc == 0
        assert out_deg == out_rad

    def test_flags_override_config(self, capsys, tmp_path):
        conf = tmp_path / "run.json"
        conf.write_text(json.dumps({
            "scenario": "classical", "theta": 0.6}))
        rc = main(["verify", "--config", str(conf), "--theta", "0.9"])
        out_mixed = capsys.readouterr().out
        assert rc == 0
        rc = main(["verify", "--scenario", "classical", "--theta", "0.9"])
        out_flags = capsys.readouterr().out
        assert out_mixed == out_flags

    def test_config_supplies_scenario(self, capsys, tmp_path):
        conf = tmp_path / "run.json"
        conf.write_text(json.dumps({"scenario": "classical"}))
        assert main(["verify", "--config", str(conf)]) == 0
        capsys.readouterr()

    def test_unknown_config_key(self, capsys, tmp_path):
        conf = tmp_path / "run.json"
        conf.write_text(json.dumps({"scenario": "classical", "spin": 2}))
        assert main(["verify", "--config", str(conf)]) == 2
        assert "unknown config fields: spin" in capsys.readouterr().err

    def test_malformed_config(self, capsys, tmp_path):
        conf = tmp_path / "run.json"
        conf.write_text("{not json")
        assert main(["verify", "--config", str(conf)]) == 2
        assert "not valid JSON" in capsys.readouterr().err

    def test_missing_config_file(self, capsys, tmp_path):
        assert main(["verify", "--config", str(tmp_path / "nope.json")]) == 2
        capsys.readouterr()

    def test_scenario_required(self, capsys):
        assert main(["verify"]) == 2
        assert "scenario" in capsys.readouterr().err


class TestOutputPlacement:
    def test_env_dir_resolves_relative_paths(self, capsys, tmp_path,
                                             monkeypatch):
        monkeypatch.setenv("BERRYSIM_OUTPUT_DIR", str(tmp_path))
        rc = main(["sweep", "--scenario", "classical", "--sweep-param", "B",
                   "--start", "1", "--stop", "1", "--steps", "1",
                   "--samples-per-period", "400"])
        capsys.readouterr()
        assert rc == 0
        assert (tmp_path / "sweep_classical.csv").exists()

    def test_absolute_path_wins_over_env(self, capsys, tmp_path, monkeypatch):
        env_dir = tmp_path / "env"
        out_dir = tmp_path / "out"
        env_dir.mkdir()
        out_dir.mkdir()
        monkeypatch.setenv("BERRYSIM_OUTPUT_DIR", str(env_dir))
        target = out_dir / "here.csv"
        rc = main(["sweep", "--scenario", "classical", "--sweep-param", "B",
                   "--start", "1", "--stop", "1", "--steps", "1",
                   "--samples-per-period", "400", "--output", str(target)])
        capsys.readouterr()
        assert rc == 0
        assert target.exists()
        assert not os.listdir(env_dir)

    def test_atomic_write_leaves_no_temp_files(self, capsys, tmp_path):
        target = tmp_path / "clean.csv"
        rc = main(["sweep", "--scenario", "classical", "--sweep-param", "B",
                   "--start", "1", "--stop", "1", "--steps", "1",
                   "--samples-per-period", "400", "--output", str(target)])
        capsys.readouterr()
        assert rc == 0
        assert os.listdir(tmp_path) == ["clean.csv"]


class TestArgumentErrors:
    def test_uncertainty_is_verify_only(self, capsys):
        rc = main(["sweep", "--scenario", "uncertainty",
                   "--sweep-param", "theta", "--start", "0.5",
                   "--stop", "1.5", "--steps", "2"])
        assert rc == 2
        assert "verify-only" in capsys.readouterr().err

    def test_sweep_param_not_in_scenario(self, capsys):
        rc = main(["sweep", "--scenario", "classical", "--sweep-param", "mu",
                   "--start", "0", "--stop", "1", "--steps", "2"])
        assert rc == 2
        capsys.readouterr()

    def test_sweep_needs_bounds(self, capsys):
        rc = main(["sweep", "--scenario", "hybrid", "--sweep-param", "mu"])
        assert rc == 2
        capsys.readouterr()

    def test_bad_scenario_choice_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--scenario", "bogus"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_missing_subcommand_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
        capsys.readouterr()
