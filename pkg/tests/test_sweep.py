import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rzfractal.sweep import (CSV_COLUMNS, SweepConfig, SweepRecord, best_records, default_settings,
                             draw_parameters, evaluate_point, format_records, read_records,
                             resolve_settings, run_sweep, smooth_baseline)


def test_draws_are_seeded_and_in_range():
    cfg = SweepConfig(samples=200, seed=11)
    a, b = draw_parameters(cfg), draw_parameters(cfg)
    np.testing.assert_array_equal(a, b)
    assert a.shape == (200, 2)
    assert np.all((a[:, 0] >= 1) & (a[:, 0] < 10) & (a[:, 1] >= 0) & (a[:, 1] < 10))
    assert not np.array_equal(a, draw_parameters(SweepConfig(samples=200, seed=12)))


def test_draws_are_prefix_stable():
    short = draw_parameters(SweepConfig(samples=10, seed=5))
    long = draw_parameters(SweepConfig(samples=50, seed=5))
    np.testing.assert_array_equal(short, long[:10])


def test_fixed_sigma_range():
    p = draw_parameters(SweepConfig(samples=20, seed=1, sigma_range=(1.0, 1.0)))
    assert np.all(p[:, 1] == 1.0)


@pytest.mark.parametrize("bad", [dict(gamma_range=(0.5, 2)), dict(sigma_range=(3, 1)), dict(samples=0), dict(n=0)])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        SweepConfig(**bad)


def test_default_settings_shape(zeros100):
    s = default_settings(25, zeros100)
    assert s.n == 25 and s.L == 10.0
    assert s.h <= 0.1 / math.sqrt(zeros100.values[24] - 9.741)


def test_resolved_settings_pin_the_step(settings25):
    assert settings25.max_refinements == 0 and settings25.refine


def test_baseline_equals_sigma_zero_point(zeros100, settings25, baseline25):
    rec = evaluate_point(7.3, 0.0, 25, zeros100, settings25)
    assert rec.ok and rec.sse == baseline25


def test_failed_point_is_recorded_not_raised(zeros100):
    from rzfractal.eigensolver import SolverSettings
    tight = SolverSettings(h=0.2, L=4.0, n=25, refine=False)
    rec = evaluate_point(2.0, 1.0, 25, zeros100, tight, index=4)
    assert rec.status.startswith("failed:") and math.isnan(rec.sse) and rec.index == 4


def test_run_sweep_small(zeros100):
    cfg = SweepConfig(n=5, samples=6, seed=3)
    s = resolve_settings(5, zeros100.head(5))
    recs = run_sweep(cfg, zeros100, settings=s)
    assert [r.index for r in recs] == list(range(6))
    params = draw_parameters(cfg)
    for r, (g, sg) in zip(recs, params):
        assert (r.gamma, r.sigma) == (g, sg)
        assert r.ok and r.sse == evaluate_point(g, sg, 5, zeros100, s).sse


def test_best_records_ties_and_failures():
    recs = [SweepRecord(0, 2, 1, 3.0), SweepRecord(1, 2, 1, 1.0), SweepRecord(2, 2, 1, 1.0),
            SweepRecord(3, 2, 1, float("nan"), "failed:SolverError")]
    assert [r.index for r in best_records(recs, 2)] == [1, 2]
    assert len(best_records(recs, 10)) == 3
    assert best_records(recs, 0) == []


def test_csv_round_trip(tmp_path):
    recs = [SweepRecord(0, 1.1, 2.2, 0.1 + 0.2, "ok", 0.0123),
            SweepRecord(1, 9.99, 0.0, float("nan"), "failed:ResolutionError", 0.001)]
    text = format_records(recs)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    f = tmp_path / "s.csv"
    f.write_text(text)
    back = read_records(f)
    assert back[0].sse == 0.1 + 0.2 and back[0].gamma == 1.1
    assert back[1].status == "failed:ResolutionError" and math.isnan(back[1].sse)
    assert back[0].wall_time == pytest.approx(0.0123, abs=1e-6)


def test_csv_without_timing_has_empty_column():
    text = format_records([SweepRecord(0, 1.5, 1.0, 2.0, wall_time=5.0)], timing=False)
    assert text.splitlines()[1].endswith(",ok,")


@settings(max_examples=50, deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False), st.floats(1, 10), st.floats(0, 10))
def test_csv_floats_round_trip_exactly(sse, g, s):
    import csv
    import io
    row = next(csv.DictReader(io.StringIO(format_records([SweepRecord(0, g, s, sse)]))))
    assert float(row["sse"]) == sse and float(row["gamma"]) == g and float(row["sigma"]) == s


def test_baseline_rejects_failed_solve(zeros100):
    from rzfractal.eigensolver import SolverError, SolverSettings
    with pytest.raises(SolverError):
        smooth_baseline(25, zeros100, SolverSettings(h=0.2, L=4.0, n=25, refine=False))
