import math
import os

import numpy as np
import pytest

from interpsgd.data import generate_margin_data, save_libsvm
from interpsgd.harness import (
    ConfigError,
    ExperimentConfig,
    audit_report,
    fit_rate,
    parse_config_text,
    perceptron_check,
    reproduce_figure,
    run_experiment,
)
from interpsgd.numerics import make_rng
from interpsgd.objectives import Objective
from interpsgd.optimizers import RunConfig, run
from interpsgd.problems import QuadraticObjective
from interpsgd.records import CSV_HEADER, MetricRow, RunRecord


def synthetic_record(losses, start_iteration=0, step=1):
    rec = RunRecord()
    for j, loss in enumerate(losses):
        rec.append(
            MetricRow(
                pass_index=j,
                iteration=start_iteration + j * step,
                train_loss=loss,
                grad_sq_norm=0.0,
                mistake_rate=0.0,
            )
        )
    return rec


def small_config(tmp_path, **overrides):
    values = {
        "dataset": "synthetic",
        "n": "60",
        "d": "8",
        "tau": "0.15",
        "methods": "sgd,accel",
        "step_rule_accel": "tau_over_L",
        "rho_rule": "one_over_tau",
        "passes": "3",
        "seed": "2",
        "out": str(tmp_path / "out"),
    }
    values.update(overrides)
    return ExperimentConfig.from_mapping(values)


class TestConfigParsing:
    def test_parse_and_defaults(self):
        text = "# comment\ndataset = synthetic\nn = 40\n\npasses = 2\n"
        values = parse_config_text(text)
        cfg = ExperimentConfig.from_mapping(values)
        assert cfg.n == 40 and cfg.passes == 2
        assert cfg.loss == "squared_hinge"  # default

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config_text("bogus = 1\n")

    def test_missing_equals_rejected(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config_text("just some text\n")

    def test_unknown_method_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_mapping({"methods": "sgd,adam"})

    def test_libsvm_requires_path(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_mapping({"dataset": "libsvm"})

    def test_grid_rule_requires_grid(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_mapping({"rho_rule": "grid"})

    def test_bad_number_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_mapping({"passes": "three"})


class TestRunExperiment:
    def test_writes_one_csv_per_method_and_echo(self, tmp_path):
        cfg = small_config(tmp_path)
        records = run_experiment(cfg)
        assert len(records) == 2
        assert (tmp_path / "out" / "sgd.csv").exists()
        assert (tmp_path / "out" / "accel.csv").exists()
        echo = (tmp_path / "out" / "config.txt").read_text()
        assert "resolved_rho" in echo and "tau = 0.15" in echo
        header = (tmp_path / "out" / "sgd.csv").read_text().splitlines()[0]
        assert header == CSV_HEADER

    def test_deterministic_csv_bytes(self, tmp_path):
        cfg = small_config(tmp_path)
        run_experiment(cfg)
        first = {
            name: (tmp_path / "out" / name).read_bytes()
            for name in ("sgd.csv", "accel.csv", "config.txt")
        }
        run_experiment(cfg)
        for name, blob in first.items():
            assert (tmp_path / "out" / name).read_bytes() == blob

    def test_accelerated_beats_sgd_on_margin_data(self, tmp_path):
        # the schedule needs a few thousand iterations to outgrow plain SGD
        cfg = small_config(tmp_path, n="400", d="30", tau="0.1", passes="30")
        records = run_experiment(cfg)
        sgd, accel = records
        assert accel.final_loss() < sgd.final_loss()

    def test_grid_rho_rule(self, tmp_path):
        cfg = small_config(
            tmp_path,
            methods="accel",
            rho_rule="grid",
            rho_grid="2.0,8.0",
            grid_passes="2",
        )
        records = run_experiment(cfg)
        assert len(records) == 1

    def test_explicit_step_rule_requires_eta(self, tmp_path):
        cfg = small_config(tmp_path, methods="sgd", step_rule_sgd="explicit")
        with pytest.raises(ConfigError):
            run_experiment(cfg)


class TestFitRate:
    def test_exact_geometric_sequence(self):
        q = 0.8
        rec = synthetic_record([2.0 * q**k for k in range(60)])
        fit = fit_rate(rec, "linear")
        assert fit.slope == pytest.approx(math.log(q), abs=1e-9)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_exact_quadratic_power_law(self):
        rec = synthetic_record([3.0 / k**2 for k in range(1, 80)], start_iteration=1)
        fit = fit_rate(rec, "polynomial")
        assert fit.slope == pytest.approx(-2.0, abs=1e-6)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-9)

    def test_floor_clipped_tail_excluded(self):
        losses = [2.0 * 0.5**k for k in range(40)] + [0.0] * 10
        rec = synthetic_record(losses)
        fit = fit_rate(rec, "linear")
        assert fit.slope == pytest.approx(math.log(0.5), abs=1e-9)

    def test_insufficient_rows(self):
        rec = synthetic_record([1.0, 0.5, 0.25])
        with pytest.raises(ValueError, match="insufficient"):
            fit_rate(rec, "linear")

    def test_unknown_regime(self):
        rec = synthetic_record([1.0] * 20)
        with pytest.raises(ValueError):
            fit_rate(rec, "cubic")

    def test_accel_run_reaches_theoretical_linear_rate(self):
        # strongly-convex quadratic under interpolation: the fitted slope is
        # at least half the exponent ln(1 - sqrt(mu / (rho^2 L)))
        A = np.diag([0.09, 1.0])
        obj = QuadraticObjective(A, np.array([0.5, -0.5]))
        cfg = RunConfig(
            eta=1.0 / obj.L,
            rho=1.0,
            mode="strongly_convex",
            mu=obj.mu,
            seed=0,
            w0=np.array([2.0, 2.0]),
        )
        record = run(obj, "accel", cfg, 60)
        fit = fit_rate(record, "linear")
        theoretical = math.log(1.0 - math.sqrt(obj.mu / obj.L))
        assert fit.slope <= 0.5 * theoretical


class TestPerceptronCheck:
    def test_passes_on_reference_setup(self):
        report = perceptron_check(0.1, 60, 8, 20, seed=1)
        assert report.ok, report.violations
        assert -1.6 <= report.sgd_slope <= -0.6
        assert report.accel_slope <= -1.5

    def test_initial_row_loss_exactly_one(self):
        report = perceptron_check(0.1, 50, 6, 15, seed=2)
        first = report.sgd_avg_record.rows[0]
        assert first.train_loss == 1.0
        assert first.mistake_rate == 1.0

    def test_mistake_rate_dominated_by_loss_everywhere(self):
        report = perceptron_check(0.15, 40, 6, 15, seed=3)
        for rec in (report.sgd_avg_record, report.accel_record):
            for row in rec.rows:
                assert row.mistake_rate <= row.train_loss + 1e-12

    def test_seed_averaged_bound(self):
        report = perceptron_check(0.1, 50, 6, 15, seed=4)
        for row in report.sgd_avg_record.rows:
            if row.iteration >= 1:
                assert row.train_loss <= 10.0 * 8.0 / (0.1**2 * row.iteration)

    def test_summary_lines_mention_outcome(self):
        report = perceptron_check(0.1, 40, 6, 15, seed=5)
        text = "\n".join(report.summary_lines())
        assert "PASS" in text or "FAIL" in text


class TestReproduceFigure:
    def test_fig1a_curves_and_manifest(self, tmp_path):
        out = tmp_path / "fig1a"
        written = reproduce_figure(
            "fig1a", out_dir=str(out), n=200, d=20, passes=3, seed=1
        )
        assert len(written) == 2
        manifest = (out / "manifest.txt").read_text()
        assert "SGD\tsgd.csv" in manifest
        assert "Acc-SGD\tacc_sgd.csv" in manifest

    def test_app_ls_four_curves_per_setting(self, tmp_path):
        out = tmp_path / "appls"
        written = reproduce_figure(
            "app_ls", out_dir=str(out), n=80, d=10, passes=2, seed=0
        )
        assert len(written) == 16  # 4 variants x 4 margins
        manifest = (out / "manifest.txt").read_text()
        for label in ("SGD(T)", "SGD(LS)", "Acc-SGD(T)", "Acc-SGD(LS)"):
            assert manifest.count(label) >= 4

    def test_fig2_missing_file_errors(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            reproduce_figure("fig2_protein", out_dir=str(tmp_path))

    def test_fig2_pipeline_on_synthetic_libsvm_file(self, tmp_path):
        data = generate_margin_data(120, 10, 0.2, seed=6)
        path = tmp_path / "toy_libsvm.txt"
        save_libsvm(data, path)
        out = tmp_path / "fig2"
        written = reproduce_figure(
            "fig2_protein",
            paths={"protein": str(path)},
            out_dir=str(out),
            n=100,
            passes=2,
            seed=0,
        )
        assert len(written) == 2
        assert (out / "manifest.txt").exists()

    def test_unknown_figure(self, tmp_path):
        with pytest.raises(ConfigError):
            reproduce_figure("fig9z", out_dir=str(tmp_path))


class TestAuditReport:
    def test_lines_cover_routes(self, tmp_path):
        cfg = small_config(tmp_path, audit_samples="60")
        lines = audit_report(cfg)
        text = "\n".join(lines)
        assert "wgc_analytic" in text
        assert "sgc_margin" in text
        assert "empirical_ratio" in text

    def test_deterministic(self, tmp_path):
        cfg = small_config(tmp_path, audit_samples="40")
        assert audit_report(cfg) == audit_report(cfg)
