import json
from pathlib import Path

import pytest

from strategyshift import cli
from strategyshift import config as config_mod
from strategyshift.errors import ConfigError

REFERENCE_DOC = {
    "process": {"lambda_a": 1.0, "lambda_b": 1.0},
    "observation": {"family": "exponential", "initial_mean": 1.0, "interval_mean": 1.0},
    "thresholds": {"m": 1, "n": 1},
    "matrix": {"mode": "row-dependent"},
    "simulation": {"paths": 5000, "seed": 11},
    "output": {"directory": "out"},
}


@pytest.fixture
def config_file(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "out"))
    path = tmp_path / "config.json"
    path.write_text(json.dumps(REFERENCE_DOC))
    return path


class TestConfig:
    def test_roundtrip_is_idempotent(self):
        cfg = config_mod.from_dict(REFERENCE_DOC)
        once = config_mod.dumps(cfg)
        twice = config_mod.dumps(config_mod.from_dict(json.loads(once)))
        assert once == twice

    def test_unknown_block_rejected(self):
        doc = dict(REFERENCE_DOC, extra={})
        with pytest.raises(ConfigError):
            config_mod.from_dict(doc)

    def test_unknown_key_rejected(self):
        doc = json.loads(json.dumps(REFERENCE_DOC))
        doc["process"]["lambda_c"] = 1.0
        with pytest.raises(ConfigError):
            config_mod.from_dict(doc)

    def test_missing_block_names_field(self):
        doc = {k: v for k, v in REFERENCE_DOC.items() if k != "thresholds"}
        with pytest.raises(ConfigError) as excinfo:
            config_mod.from_dict(doc)
        assert excinfo.value.field == "thresholds"

    def test_invalid_mean_rejected(self):
        doc = json.loads(json.dumps(REFERENCE_DOC))
        doc["observation"]["interval_mean"] = 0.0
        with pytest.raises(ConfigError):
            config_mod.from_dict(doc)

    def test_uniform_matrix_mode(self):
        doc = json.loads(json.dumps(REFERENCE_DOC))
        doc["matrix"] = {"mode": "uniform", "m": 2.0, "n": 3.0}
        cfg = config_mod.from_dict(doc)
        assert cfg.matrix.a_threshold_low == cfg.matrix.a_threshold_high == 2.0


class TestExitCodes:
    def test_simulate_ok(self, config_file):
        assert cli.main(["simulate", str(config_file)]) == 0

    def test_missing_config(self, tmp_path):
        assert cli.main(["simulate", str(tmp_path / "nope.json")]) == 2

    def test_invalid_config(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "out"))
        bad = tmp_path / "bad.json"
        doc = json.loads(json.dumps(REFERENCE_DOC))
        doc["simulation"]["typo"] = 1
        bad.write_text(json.dumps(doc))
        assert cli.main(["simulate", str(bad)]) == 3

    def test_corrupted_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert cli.main(["conformance", str(bad)]) == 3

    def test_domain_error(self, config_file):
        assert cli.main(["classify", str(config_file), "--share", "-1",
                         "--growth", "5"]) == 4

    def test_conformance_ok(self, config_file):
        assert cli.main(["conformance", str(config_file)]) == 0

    def test_conformance_deviation(self, config_file, monkeypatch):
        # force an assertably wrong closed form to exercise exit code 5
        import strategyshift.report as report

        real = report.build_analytic_bundle

        def wrong(params, thresholds, z_grid=report.DEFAULT_Z_GRID):
            bundle = real(params, thresholds, z_grid)
            values = dict(bundle.values, mean_exit_index_a=50.0)
            return report.AnalyticBundle(
                params=bundle.params, thresholds=bundle.thresholds,
                values=values, references=bundle.references,
                assertable=bundle.assertable,
            )

        monkeypatch.setattr(cli, "build_analytic_bundle", wrong)
        assert cli.main(["conformance", str(config_file)]) == 5


class TestArtifacts:
    def test_classify_share_flags(self, config_file, capsys):
        assert cli.main(["classify", str(config_file), "--share", "2.0",
                         "--growth", "15"]) == 0
        assert capsys.readouterr().out.strip() == "Stars"

    def test_classify_raw_levels_uniform(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "out"))
        doc = json.loads(json.dumps(REFERENCE_DOC))
        doc["matrix"] = {"mode": "uniform", "m": 0.0, "n": 0.0}
        path = tmp_path / "uniform.json"
        path.write_text(json.dumps(doc))
        assert cli.main(["classify", str(path), "--a", "0", "--b", "0"]) == 0
        assert capsys.readouterr().out.strip() == "I"

    def test_simulate_writes_contracted_files(self, config_file, tmp_path):
        cli.main(["simulate", str(config_file)])
        out = tmp_path / "out"
        header = (out / "histogram_mu.csv").read_text().splitlines()[0]
        assert header == "index,count,probability"
        summary = json.loads((out / "summary.json").read_text())
        assert {"mean_mu", "se_mu", "n_paths"} <= set(summary)

    def test_conformance_csv_header(self, config_file, tmp_path):
        cli.main(["conformance", str(config_file)])
        header = (tmp_path / "out" / "conformance.csv").read_text().splitlines()[0]
        assert header == "quantity,paper_ref,analytic,mc_estimate,se,rel_dev,verdict"

    def test_analyze_reports_closed_forms(self, config_file, tmp_path):
        assert cli.main(["analyze", str(config_file)]) == 0
        report = json.loads((tmp_path / "out" / "analysis.json").read_text())
        assert report["means"]["a"]["shift_time_mean"] == 1.0
        assert report["index_pgf_closed"]["note"] == "singular"

    def test_analyze_shift_time_value(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "out"))
        doc = json.loads(json.dumps(REFERENCE_DOC))
        doc["process"]["lambda_a"] = 0.5
        path = tmp_path / "c.json"
        path.write_text(json.dumps(doc))
        assert cli.main(["analyze", str(path)]) == 0
        report = json.loads((tmp_path / "out" / "analysis.json").read_text())
        assert report["means"]["a"]["shift_time_mean"] == 2.0

    def test_analyze_static_axis(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "out"))
        doc = json.loads(json.dumps(REFERENCE_DOC))
        doc["process"]["lambda_a"] = 0.0
        path = tmp_path / "c.json"
        path.write_text(json.dumps(doc))
        assert cli.main(["analyze", str(path)]) == 0
        report = json.loads((tmp_path / "out" / "analysis.json").read_text())
        assert report["means"]["a"]["shift_time_mean"] == "no shift predicted"

    def test_analyze_deterministic_needs_memoryless(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "out"))
        doc = json.loads(json.dumps(REFERENCE_DOC))
        doc["observation"]["family"] = "deterministic"
        path = tmp_path / "c.json"
        path.write_text(json.dumps(doc))
        assert cli.main(["analyze", str(path)]) == 0
        report = json.loads((tmp_path / "out" / "analysis.json").read_text())
        assert report["index_pgf_closed"]["note"] == (
            "requires memoryless observation intervals"
        )

    def test_byte_identical_reruns(self, config_file, tmp_path, monkeypatch):
        def run_into(d):
            monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(d))
            assert cli.main(["simulate", str(config_file)]) == 0
            assert cli.main(["conformance", str(config_file)]) == 0

        run_into(tmp_path / "run1")
        run_into(tmp_path / "run2")
        for name in ("histogram_mu.csv", "histogram_nu.csv", "summary.json",
                     "conformance.csv", "conformance.json"):
            b1 = (tmp_path / "run1" / name).read_bytes()
            b2 = (tmp_path / "run2" / name).read_bytes()
            assert b1 == b2, name
