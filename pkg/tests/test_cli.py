import json
import math
from fractions import Fraction

import pytest

from bellcheck import cli


def run_cli(args):
    return cli.main(args)


class TestRun:
    def test_json_report_roundtrip(self, tmp_path):
        out = tmp_path / "report.json"
        code = run_cli(["run", "--model", "dice-coin", "--n", "20000",
                        "--seed", "42", "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["model"] == "dice-coin"
        assert report["n_per_series"] == 20000
        assert report["seed"] == 42
        assert set(report["correlations"]) == {"e11", "e12", "e21", "e22"}
        c = report["correlations"]
        assert report["s_star"] == c["e11"] - c["e12"] + c["e21"] + c["e22"]
        assert report["bound_satisfied"] is True
        assert abs(report["s_star"]) <= 3 * report["hoeffding_epsilon"] * 4
        assert report["mi"]["holds"] is True
        for freqs in report["class_frequencies"].values():
            assert abs(sum(freqs.values()) - 1.0) < 1e-9

    def test_json_fields_match_in_process_report(self, tmp_path):
        from bellcheck.engine import chsh_report, run_experiment
        from bellcheck.zoo import get_model

        out = tmp_path / "report.json"
        run_cli(["run", "--model", "dice-coin", "--n", "8000", "--seed", "31", "--out", str(out)])
        parsed = json.loads(out.read_text())
        rep = chsh_report(run_experiment(get_model("dice-coin"), 8000, seed=31))
        assert parsed["correlations"]["e11"] == rep.table.e11
        assert parsed["correlations"]["e12"] == rep.table.e12
        assert parsed["correlations"]["e21"] == rep.table.e21
        assert parsed["correlations"]["e22"] == rep.table.e22
        assert parsed["s_star"] == rep.s_star
        assert parsed["hoeffding_epsilon"] == rep.hoeffding_epsilon
        assert parsed["bound_satisfied"] == rep.bound_satisfied
        assert parsed["n_per_series"] == rep.n_per_series

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            assert run_cli(["run", "--model", "dice-coin", "--n", "5000",
                            "--seed", "7", "--out", str(path)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_byte_identical_across_workers(self, tmp_path, monkeypatch):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        monkeypatch.setenv("BELLCHECK_THREADS", "1")
        run_cli(["run", "--model", "cosine-sign", "--n", "40000", "--seed", "1", "--out", str(a)])
        monkeypatch.setenv("BELLCHECK_THREADS", "4")
        run_cli(["run", "--model", "cosine-sign", "--n", "40000", "--seed", "1",
                 "--out", str(b), "--interleave"])
        assert a.read_bytes() == b.read_bytes()

    def test_quantum_run(self, tmp_path):
        out = tmp_path / "q.json"
        code = run_cli(["run", "--model", "quantum", "--n", "100000",
                        "--seed", "3", "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["angles"] == [0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4]
        assert abs(report["s_star"] + 2 * math.sqrt(2)) < 4 * report["hoeffding_epsilon"]
        assert report["bound_satisfied"] is False
        assert "class_frequencies" not in report

    def test_csv_schema(self, tmp_path):
        out = tmp_path / "report.csv"
        run_cli(["run", "--model", "dice-coin", "--n", "1000", "--seed", "0",
                 "--format", "csv", "--out", str(out)])
        lines = out.read_text().splitlines()
        assert lines[0] == "pair_i,pair_k,n,e_hat,hoeffding_eps"
        assert len(lines) == 7
        assert lines[5] == "s_star,bound_2,tsirelson_2sqrt2"
        for line, pair in zip(lines[1:5], ((1, 1), (1, 2), (2, 1), (2, 2))):
            fields = line.split(",")
            assert (int(fields[0]), int(fields[1])) == pair
            assert int(fields[2]) == 1000
            float(fields[3]); float(fields[4])
        summary = lines[6].split(",")
        assert summary[1] == "2"
        assert float(summary[2]) == pytest.approx(2 * math.sqrt(2))

    def test_config_file_with_flag_override(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({
            "model": "dice-coin", "n_per_series": 1000, "seed": 5, "format": "json",
        }))
        out = tmp_path / "r.json"
        run_cli(["run", "--config", str(config), "--seed", "9", "--out", str(out)])
        report = json.loads(out.read_text())
        assert report["seed"] == 9  # flag wins
        assert report["n_per_series"] == 1000  # from config

    def test_unknown_model_is_config_error(self, tmp_path):
        assert run_cli(["run", "--model", "telepathy"]) == cli.EXIT_CONFIG

    def test_missing_model_is_config_error(self):
        assert run_cli(["run", "--n", "10"]) == cli.EXIT_CONFIG

    def test_bad_config_file_is_config_error(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text("{not json")
        assert run_cli(["run", "--config", str(config)]) == cli.EXIT_CONFIG

    def test_model_failure_exit_code(self, monkeypatch):
        from bellcheck.core import LhvModel
        from bellcheck.zoo import MODEL_FACTORIES

        def broken():
            return LhvModel(
                name="broken",
                respond_alice=lambda i, lam: 1,
                respond_bob=lambda i, lam: 1,
                sample_lambda=lambda rng, n, pair: (_ for _ in ()).throw(KeyError("boom")),
                declares_mi=True,
            )

        monkeypatch.setitem(MODEL_FACTORIES, "broken", broken)
        assert run_cli(["run", "--model", "broken", "--n", "10"]) == cli.EXIT_MODEL

    def test_angles_rejected_for_plain_models(self):
        assert run_cli(["run", "--model", "dice-coin", "--n", "10",
                        "--angles", "0,1,2,3"]) == cli.EXIT_CONFIG


class TestBound:
    def test_dice_coin(self, capsys):
        assert run_cli(["bound", "--model", "dice-coin"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["series_s"] == {"exact": "0", "float": 0.0}
        assert out["series_table"]["e11"]["exact"] == "1"
        assert out["mi_holds_exact"] is True
        classes = {c["behavior"]: c for c in out["single_distribution"]["classes"]}
        assert classes["+-++"]["weight"] == "1/2"
        assert classes["+-++"]["c"] == -2
        assert classes["+++-"]["c"] == 2

    def test_conspiracy_series_vs_single_distribution(self, capsys):
        assert run_cli(["bound", "--model", "conspiracy"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["series_s"]["float"] == 4.0
        assert abs(out["single_distribution"]["s"]["float"]) <= 2
        assert out["mi_holds_exact"] is False

    def test_quantum_rejected(self):
        assert run_cli(["bound", "--model", "quantum"]) == cli.EXIT_CONFIG


class TestFineCheck:
    def test_pr_box(self, capsys):
        assert run_cli(["fine-check", "--correlations", "1,1,1,-1"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["feasible"] is False
        assert out["violated_facet"]["signs"] == [1, 1, 1, -1]
        assert out["violated_facet"]["value"]["exact"] == "4"
        assert out["chsh_criterion"]["all_pass"] is False

    def test_dice_stats_with_marginals(self, capsys):
        assert run_cli(["fine-check", "--correlations", "1,0,0,-1",
                        "--marginals", "1,0,1,0"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["feasible"] is True
        assert sum(Fraction(v) for v in out["witness"].values()) == 1
        assert out["chsh_criterion"]["max_facet_value"]["exact"] == "2"

    def test_decimal_inputs_are_exact(self, capsys):
        assert run_cli(["fine-check", "--correlations", "0.5,0.25,-0.25,0.5"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["feasible"] is True

    def test_invalid_stats_rejected(self):
        assert run_cli(["fine-check", "--correlations", "1,1,1"]) == cli.EXIT_CONFIG
        assert run_cli(["fine-check", "--correlations", "3,0,0,0"]) == cli.EXIT_CONFIG


class TestGhzCheck:
    def test_four_system(self, capsys):
        assert run_cli(["ghz-check"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["satisfiable"] is True
        assert out["assignments_checked"] == 256
        assert out["n_constraints"] == 4
        assert len(out["witness"]) == 8

    def test_five_system(self, capsys):
        assert run_cli(["ghz-check", "--fifth"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["satisfiable"] is False
        assert out["witness"] is None

    def test_degenerate_phi(self):
        assert run_cli(["ghz-check", "--phi", "0"]) == cli.EXIT_CONFIG

    def test_resource_guard_exit_code(self, monkeypatch):
        from bellcheck import cli as cli_mod
        from bellcheck.errors import ResourceLimitError

        def explode(constraints):
            raise ResourceLimitError("too many variables")

        monkeypatch.setattr(cli_mod.ghz_mod, "check_satisfiable", explode)
        assert run_cli(["ghz-check"]) == cli.EXIT_RESOURCE


class TestZooCommand:
    def test_lists_models(self, capsys):
        assert run_cli(["zoo"]) == 0
        out = capsys.readouterr().out
        for name in ("conspiracy", "cosine-sign", "dice-coin", "quantum"):
            assert name in out
