import io

import pytest

from rigidcomp.experiments import (
    CSV_COLUMNS,
    ExperimentConfig,
    TrialRecord,
    coupled_largest_spans,
    derive_trial_seed,
    dichotomy_check,
    emergence_scan,
    run_sweep,
    run_trial,
    sweep_metadata,
    uniqueness_stat,
    write_records_csv,
)


class TestSeedDerivation:
    def test_deterministic(self):
        assert derive_trial_seed(7, 100, 4.5, 3) == derive_trial_seed(7, 100, 4.5, 3)

    def test_sensitive_to_every_field(self):
        base = derive_trial_seed(7, 100, 4.5, 3)
        assert base != derive_trial_seed(8, 100, 4.5, 3)
        assert base != derive_trial_seed(7, 101, 4.5, 3)
        assert base != derive_trial_seed(7, 100, 4.6, 3)
        assert base != derive_trial_seed(7, 100, 4.5, 4)

    def test_64_bit_range(self):
        for t in range(20):
            assert 0 <= derive_trial_seed(1, 50, 2.0, t) < 1 << 64

    def test_int_float_c_agree(self):
        # the key uses float(c), so 4 and 4.0 name the same trial
        assert derive_trial_seed(1, 50, 4, 0) == derive_trial_seed(1, 50, 4.0, 0)


class TestRunTrial:
    def test_c_zero_empty(self):
        rec = run_trial(50, 0.0, 123)
        assert rec.edge_count == 0
        assert rec.n_components == 0
        assert rec.largest_span == 0
        assert not rec.triangle_present
        assert not rec.gap_violation

    def test_histogram_conserves_components(self):
        rec = run_trial(200, 4.5, 99)
        assert sum(rec.component_size_histogram.values()) == rec.n_components
        assert rec.n_trivial == rec.component_size_histogram.get(2, 0)

    def test_edge_count_plausible(self):
        # Binomial(C(200,2), 4.5/200) has mean 447.75, sd ~21
        rec = run_trial(200, 4.5, 7)
        assert 300 < rec.edge_count < 600

    def test_determinism(self):
        assert run_trial(150, 3.0, 42) == run_trial(150, 3.0, 42)

    def test_gap_violation_flag(self):
        # a span in [gap_lower, 0.01 n) must raise the flag
        rec = run_trial(5000, 4.5, 0, gap_lower=4)
        hist = rec.component_size_histogram
        expect = any(4 <= k < 50 for k in hist)
        assert rec.gap_violation == expect
        assert dichotomy_check(rec) == (not expect)

    def test_linear_count(self):
        rec = run_trial(300, 6.0, 5)
        hist = rec.component_size_histogram
        assert rec.count_linear_components == sum(
            v for k, v in hist.items() if k >= 3
        )

    def test_c_must_be_below_n(self):
        with pytest.raises(ValueError):
            run_trial(10, 10.0, 0)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentConfig((10,), (1.0,), trials=0, master_seed=1)
        with pytest.raises(ValueError):
            ExperimentConfig((10,), (1.0,), trials=1, master_seed=1, gap_lower=3)
        with pytest.raises(ValueError):
            ExperimentConfig(
                (10,), (1.0,), trials=1, master_seed=1, gap_upper_fraction=1.5
            )

    def test_metadata_replay_fields(self):
        cfg = ExperimentConfig((50,), (2.0, 4.5), trials=3, master_seed=11)
        meta = sweep_metadata(cfg)
        assert "PCG64" in meta["rng"]
        assert meta["master_seed"] == 11
        assert meta["c_values"] == [2.0, 4.5]


class TestSweep:
    CFG = ExperimentConfig((40, 60), (1.0, 4.5), trials=4, master_seed=2024)

    def test_record_grid(self):
        records, summaries = run_sweep(self.CFG)
        assert len(records) == 2 * 2 * 4
        assert len(summaries) == 4
        assert [r.sort_key() for r in records] == sorted(r.sort_key() for r in records)

    def test_thread_count_invariance(self):
        serial, _ = run_sweep(self.CFG, threads=1)
        parallel, _ = run_sweep(self.CFG, threads=4)
        assert serial == parallel

    def test_summary_consistency(self):
        records, summaries = run_sweep(self.CFG)
        cell = next(s for s in summaries if s["n"] == 60 and s["c"] == 4.5)
        sub = [r for r in records if r.n == 60 and r.c == 4.5]
        assert cell["trials"] == 4
        assert cell["mean_edge_count"] == sum(r.edge_count for r in sub) / 4
        assert 0 <= cell["frac_triangle"] <= 1

    def test_csv_stability(self):
        records, _ = run_sweep(self.CFG)
        buf1, buf2 = io.StringIO(), io.StringIO()
        write_records_csv(records, buf1)
        write_records_csv(run_sweep(self.CFG, threads=3)[0], buf2)
        assert buf1.getvalue() == buf2.getvalue()
        header = buf1.getvalue().splitlines()[0]
        assert header == ",".join(CSV_COLUMNS)
        assert len(buf1.getvalue().splitlines()) == 1 + len(records)


class TestEmergenceScan:
    def test_monotone_trend_across_transition(self):
        rows = emergence_scan(400, [1.0, 6.0], trials=5, master_seed=3)
        assert rows[0]["frac_linear"] == 0.0
        assert rows[1]["frac_linear"] == 1.0

    def test_row_shape(self):
        rows = emergence_scan(50, [2.0], trials=2, master_seed=1)
        assert rows == [{"c": 2.0, "n": 50, "trials": 2, "frac_linear": rows[0]["frac_linear"]}]


class TestUniqueness:
    def test_none_when_no_linear(self):
        # subcritical at n=500: the linear cut is 5 and no span reaches it
        records, _ = run_sweep(
            ExperimentConfig((500,), (0.5,), trials=3, master_seed=5)
        )
        assert uniqueness_stat(records) is None

    def test_supercritical_mostly_unique(self):
        records, _ = run_sweep(
            ExperimentConfig((400,), (6.0,), trials=10, master_seed=6)
        )
        stat = uniqueness_stat(records)
        assert stat is not None and stat >= 0.9


class TestCoupling:
    def test_monotone_in_c(self):
        for seed in range(5):
            spans = coupled_largest_spans(120, [1.0, 2.0, 3.0, 4.0, 5.0], seed)
            assert all(a <= b for a, b in zip(spans, spans[1:]))

    def test_matches_marginal_distribution_shape(self):
        # supercritical coupled samples still show a dominant component
        spans = coupled_largest_spans(300, [6.0], 7)
        assert spans[0] > 150

    def test_c_range_check(self):
        with pytest.raises(ValueError):
            coupled_largest_spans(10, [12.0], 0)
