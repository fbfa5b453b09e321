import csv
import json
import math

import pytest

from genegeo import harness
from genegeo.harness import (
    EXIT_ERROR,
    EXIT_OK,
    EXIT_VIOLATION,
    ExperimentConfig,
    HarnessError,
    main,
    run_experiment,
    wilson_interval,
)


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


class TestConfig:
    def test_unknown_kind(self):
        with pytest.raises(HarnessError):
            ExperimentConfig(kind="mystery")

    def test_unknown_field(self):
        with pytest.raises(HarnessError):
            ExperimentConfig.from_dict({"kind": "table1-census", "turbo": True})

    def test_kind_required(self):
        with pytest.raises(HarnessError):
            ExperimentConfig.from_dict({"seed": 3})

    def test_replicas_positive(self):
        with pytest.raises(HarnessError):
            ExperimentConfig(kind="guessgame", replicas=0)

    def test_json_file_round_trip(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"kind": "guessgame", "rounds": 5000, "seed": 9}))
        cfg = ExperimentConfig.from_json_file(path)
        assert cfg.kind == "guessgame"
        assert cfg.rounds == 5000
        assert cfg.to_dict()["seed"] == 9


class TestWilson:
    def test_midpoint(self):
        low, high = wilson_interval(50, 100)
        assert low < 0.5 < high
        assert high - 0.5 == pytest.approx(0.5 - low, abs=1e-12)

    def test_extremes_stay_in_unit_interval(self):
        low, _ = wilson_interval(0, 20)
        _, high = wilson_interval(20, 20)
        assert low == pytest.approx(0.0, abs=1e-12)
        assert high == pytest.approx(1.0, abs=1e-12)
        assert wilson_interval(0, 20)[1] > 0.0
        assert wilson_interval(20, 20)[0] < 1.0

    def test_needs_samples(self):
        with pytest.raises(HarnessError):
            wilson_interval(0, 0)


class TestSweepExperiment:
    def test_report_and_exit(self, tmp_path):
        cfg = ExperimentConfig(kind="conservation-sweep", triples=4000, seed=1, out=str(tmp_path))
        result = run_experiment(cfg)
        assert result.exit_code == EXIT_OK
        assert result.summary["pass"] is True
        assert result.summary["must_hold_violations"] == 0
        assert result.summary["linf_reference_sum_violations"] > 0

        header, rows = read_csv(result.csv_path)
        assert header == ["schema", "metric", "check", "triples", "violations", "max_rel_dev", "must_hold"]
        # the summary must be recomputable from the CSV rows alone
        recomputed = sum(int(r[4]) for r in rows if r[6] == "1")
        assert recomputed == result.summary["must_hold_violations"]
        linf_row = [r for r in rows if r[0] == "real" and r[1] == "linf" and r[2] == "reference-sum"]
        assert len(linf_row) == 1 and linf_row[0][6] == "0"
        assert int(linf_row[0][4]) == result.summary["linf_reference_sum_violations"]

    def test_json_summary_schema(self, tmp_path):
        cfg = ExperimentConfig(kind="conservation-sweep", triples=2000, out=str(tmp_path))
        result = run_experiment(cfg)
        doc = json.loads(result.json_path.read_text())
        assert doc["schema_version"] == 1
        assert doc["kind"] == "conservation-sweep"
        assert doc["config"]["triples"] == 2000
        assert doc["summary"]["pass"] is True


class TestCensusExperiment:
    def test_counts_round_trip(self, tmp_path):
        cfg = ExperimentConfig(kind="table1-census", max_bits=4, out=str(tmp_path))
        result = run_experiment(cfg)
        assert result.exit_code == EXIT_OK
        header, rows = read_csv(result.csv_path)
        totals = {}
        for n_bits, label, count in rows:
            totals[label] = totals.get(label, 0) + int(count)
        assert totals == result.summary["totals"]
        assert result.summary["impossible_occurrences"] == 0


class TestGameExperiments:
    def test_guessgame_defaults(self, tmp_path):
        cfg = ExperimentConfig(kind="guessgame", rounds=20_000, replicas=3, seed=2, out=str(tmp_path))
        result = run_experiment(cfg)
        assert result.exit_code == EXIT_OK
        assert result.summary["analytic"] == pytest.approx(0.625, abs=1e-12)
        assert result.summary["within_4sigma"] >= 2
        header, rows = read_csv(result.csv_path)
        assert len(rows) == 3
        mean = sum(float(r[4]) for r in rows) / 3
        assert mean == result.summary["mean_win_rate"]

    def test_guessgame_custom_distribution(self, tmp_path):
        cfg = ExperimentConfig(
            kind="guessgame",
            distribution=[[3, 1, 0.5], [2, 0, 0.5]],
            rounds=10_000,
            out=str(tmp_path),
        )
        result = run_experiment(cfg)
        assert result.summary["support"] == [[3.0, 1.0, 0.5], [2.0, 0.0, 0.5]]

    def test_invalid_distribution_rejected(self, tmp_path):
        cfg = ExperimentConfig(
            kind="guessgame", distribution=[[1, 1, 1.0]], out=str(tmp_path)
        )
        with pytest.raises(Exception):
            run_experiment(cfg)

    def test_selection_compare_shows_hard_tie(self, tmp_path):
        # all support above the fixed threshold: hard selection is held to
        # exactly one half, the adaptive threshold restores the edge
        cfg = ExperimentConfig(
            kind="selection-compare", rounds=20_000, seed=3, out=str(tmp_path)
        )
        result = run_experiment(cfg)
        curves = result.summary["curves"]
        assert curves["hard"]["analytic"] == 0.5
        assert curves["hard"]["beats_half"] is False
        assert curves["adaptive-hard"]["analytic"] == 1.0
        assert curves["arctan"]["beats_half"] is True
        assert curves["tanh"]["beats_half"] is True


class TestGaExperiment:
    def test_sphere_history(self, tmp_path):
        cfg = ExperimentConfig(
            kind="ga-run", objective="sphere", replicas=2, population_size=20,
            max_generations=60, stall_generations=5, seed=4, out=str(tmp_path),
        )
        result = run_experiment(cfg)
        header, rows = read_csv(result.csv_path)
        per_replica = result.summary["replicas"]
        assert len(rows) == sum(r["generations"] + 1 for r in per_replica)
        assert set(result.summary["stop_reasons"]) <= {"stall", "max-generations"}
        assert len(per_replica[0]["history"]) == per_replica[0]["generations"] + 1

    def test_onemax_runs_on_budget(self, tmp_path):
        cfg = ExperimentConfig(
            kind="ga-run", objective="onemax", n_loci=10, replicas=2,
            population_size=10, seed=4, out=str(tmp_path),
        )
        result = run_experiment(cfg)
        assert result.summary["stop_reasons"] == {"budget": 2}
        header, rows = read_csv(result.csv_path)
        volume_col = header.index("better_half_volume")
        assert all(r[volume_col] == "" for r in rows)

    def test_unknown_objective(self, tmp_path):
        cfg = ExperimentConfig(kind="ga-run", objective="rosenbrock", out=str(tmp_path))
        with pytest.raises(HarnessError):
            run_experiment(cfg)


class TestBudgetExperiment:
    def test_report_fields(self, tmp_path):
        cfg = ExperimentConfig(
            kind="discrete-budget", budget_bits=8, budget_runs=30, seed=5, out=str(tmp_path)
        )
        result = run_experiment(cfg)
        s = result.summary
        assert s["budget_evaluations"] == math.ceil(8**1.5 * math.log(8))
        assert s["exhaustive_evaluations"] == 256
        assert 0.0 <= s["wilson_low"] <= s["fraction_within_1"] <= s["wilson_high"] <= 1.0
        assert s["reference_claim_fraction"] == 0.5
        assert s["reference_claim_is_gate"] is False
        header, rows = read_csv(result.csv_path)
        assert len(rows) == 30
        assert sum(int(r[6]) for r in rows) / 30 == s["fraction_within_1"]

    def test_bits_range_enforced(self, tmp_path):
        for bits in (3, 21):
            cfg = ExperimentConfig(kind="discrete-budget", budget_bits=bits, out=str(tmp_path))
            with pytest.raises(HarnessError):
                run_experiment(cfg)


class TestDeterminism:
    @pytest.mark.parametrize(
        "cfg_kwargs",
        [
            {"kind": "conservation-sweep", "triples": 2000},
            {"kind": "table1-census", "max_bits": 4},
            {"kind": "guessgame", "rounds": 5000, "replicas": 3},
            {"kind": "selection-compare", "rounds": 2000, "replicas": 2},
            {"kind": "ga-run", "objective": "sphere", "replicas": 2, "population_size": 12,
             "max_generations": 25, "stall_generations": 4},
            {"kind": "discrete-budget", "budget_bits": 6, "budget_runs": 10},
        ],
    )
    def test_byte_identical_reruns(self, tmp_path, cfg_kwargs):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        res_a = run_experiment(ExperimentConfig(seed=7, out=str(out_a), **cfg_kwargs))
        res_b = run_experiment(ExperimentConfig(seed=7, out=str(out_b), **cfg_kwargs))
        assert res_a.csv_path.read_bytes() == res_b.csv_path.read_bytes()

    def test_seed_changes_output(self, tmp_path):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        res_a = run_experiment(ExperimentConfig(kind="guessgame", rounds=5000, seed=1, out=str(out_a)))
        res_b = run_experiment(ExperimentConfig(kind="guessgame", rounds=5000, seed=2, out=str(out_b)))
        assert res_a.csv_path.read_bytes() != res_b.csv_path.read_bytes()


class TestCli:
    def test_census_command(self, tmp_path, capsys):
        code = main(["census", "--max-bits", "3", "--out", str(tmp_path)])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "table1-census: PASS" in out
        assert (tmp_path / "table1_census.csv").exists()

    def test_run_command_with_config(self, tmp_path):
        cfg_path = tmp_path / "exp.json"
        cfg_path.write_text(json.dumps({"kind": "guessgame", "rounds": 2000}))
        code = main(["run", str(cfg_path), "--seed", "3", "--out", str(tmp_path)])
        assert code == EXIT_OK
        doc = json.loads((tmp_path / "guessgame.json").read_text())
        assert doc["config"]["seed"] == 3

    def test_game_with_distribution_file(self, tmp_path):
        dist = tmp_path / "dist.json"
        dist.write_text(json.dumps([[4, 2, 1.0]]))
        code = main(
            ["game", "--distribution", str(dist), "--rounds", "2000", "--out", str(tmp_path)]
        )
        assert code == EXIT_OK
        doc = json.loads((tmp_path / "guessgame.json").read_text())
        assert doc["summary"]["support"] == [[4.0, 2.0, 1.0]]

    def test_compare_flag(self, tmp_path):
        code = main(["game", "--compare", "--rounds", "1000", "--out", str(tmp_path)])
        assert code == EXIT_OK
        assert (tmp_path / "selection_compare.csv").exists()

    def test_budget_command(self, tmp_path):
        code = main(
            ["budget", "--bits", "6", "--runs", "5", "--population", "8", "--out", str(tmp_path)]
        )
        assert code == EXIT_OK

    def test_bad_config_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["run", str(bad)]) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_unknown_kind_in_config(self, tmp_path, capsys):
        cfg_path = tmp_path / "exp.json"
        cfg_path.write_text(json.dumps({"kind": "teleport"}))
        assert main(["run", str(cfg_path)]) == EXIT_ERROR

    def test_violation_exit_code_propagates(self, tmp_path, monkeypatch, capsys):
        def fake_experiment(cfg):
            return ("a",), [(1,)], {"pass": False}, EXIT_VIOLATION

        monkeypatch.setitem(harness._EXPERIMENTS, "table1-census", fake_experiment)
        code = main(["census", "--out", str(tmp_path)])
        assert code == EXIT_VIOLATION
        assert "VIOLATION" in capsys.readouterr().out

    def test_env_var_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv(harness.ENV_OUT, str(tmp_path / "from-env"))
        code = main(["census", "--max-bits", "2"])
        assert code == EXIT_OK
        assert (tmp_path / "from-env" / "table1_census.csv").exists()

    def test_unwritable_output_dir(self, tmp_path, capsys):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        code = main(["census", "--max-bits", "2", "--out", str(blocker / "sub")])
        assert code == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_hard_curve_with_threshold_flag(self, tmp_path):
        dist = tmp_path / "dist.json"
        dist.write_text(json.dumps([[4, 2, 1.0]]))
        code = main(
            ["game", "--curve", "hard", "--n0", "3", "--rounds", "1000",
             "--distribution", str(dist), "--out", str(tmp_path)]
        )
        assert code == EXIT_OK
        doc = json.loads((tmp_path / "guessgame.json").read_text())
        # threshold between the two support values restores the full edge
        assert doc["summary"]["analytic"] == 1.0
