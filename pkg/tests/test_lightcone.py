#!/usr/bin/env python3
# coding=utf-8

import math
from dataclasses import replace

import numpy as np
import pytest

from vt.quantum.entcone.errors import DegenerateDesignError, DomainError, InsufficientSamplesError, NumericalError
from vt.quantum.entcone.lightcone import (
    CSV_COLUMNS,
    SweepSample,
    arrival_time,
    envelope_violations,
    fit_envelope,
    samples_frame,
    samples_from_frame,
    verify_theorem_a,
    verify_theorem_b,
)


def synthetic(mu: float, c: float, amplitude: float, noise: float = 0.0, seed: int = 0) -> list[SweepSample]:
    rng = np.random.default_rng(seed)
    rows = []
    for d in range(4, 14):
        for t in np.linspace(0.0, 2.0, 9):
            value = amplitude * math.exp(-mu * (d - c * t) + noise * rng.normal())
            rows.append(SweepSample(float(d), float(t), value, value / 2.0, row=len(rows)))
    return rows


class TestEnvelopeFit:
    def test_exact_envelope_is_recovered(self):
        fit = fit_envelope(synthetic(0.9, 2.0, 0.4), "residual", c_ref=2.0, margin=1.0)
        assert fit.mu_fit == pytest.approx(0.9)
        assert fit.c_fit == pytest.approx(2.0)
        assert math.exp(fit.log_c_fit) == pytest.approx(0.4)
        assert fit.correlation_length == pytest.approx(1.0 / 0.9)

    def test_noisy_envelope_stays_close(self):
        fit = fit_envelope(synthetic(0.9, 2.0, 0.4, noise=0.05, seed=4), "leakage", c_ref=2.0, margin=1.0)
        assert fit.mu_fit == pytest.approx(0.9, rel=0.05)
        assert fit.c_fit == pytest.approx(2.0, rel=0.1)
        assert fit.rms_log_residual == pytest.approx(0.05, rel=0.3)

    def test_fitted_rows_respect_the_exclusion_cone(self):
        rows = synthetic(0.9, 2.0, 0.4)
        fit = fit_envelope(rows, "residual", c_ref=2.0, margin=1.0)
        used = [s for s in rows if s.row in set(fit.rows)]
        assert used and all(s.d - fit.c_fit * s.t > 1.0 - 1e-6 for s in used)

    def test_exact_samples_do_not_violate_their_envelope(self):
        rows = synthetic(0.9, 2.0, 0.4)
        fit = fit_envelope(rows, "residual", c_ref=2.0, margin=1.0)
        assert envelope_violations(rows, fit) == []

    def test_an_outlier_is_reported(self):
        rows = synthetic(0.9, 2.0, 0.4, noise=0.01, seed=1)
        bumped = [s if s.row != 3 else SweepSample(s.d, s.t, s.residual * 50.0, s.leakage, row=3) for s in rows]
        fit = fit_envelope(bumped, "residual", c_ref=2.0, margin=1.0)
        assert 3 in {s.row for s in envelope_violations(bumped, fit)}

    def test_too_few_samples(self):
        with pytest.raises(InsufficientSamplesError, match="insufficient samples"):
            fit_envelope(synthetic(0.9, 2.0, 0.4)[:5], "residual", c_ref=2.0)

    def test_single_time_is_degenerate(self):
        rows = [s for s in synthetic(0.9, 2.0, 0.4) if s.t == 0.0]
        with pytest.raises(DegenerateDesignError) as info:
            fit_envelope(rows, "residual", c_ref=2.0, min_samples=3)
        assert info.value.axis == "t"

    def test_growth_in_d_is_not_a_cone(self):
        rows = [SweepSample(float(d), t, math.exp(0.3 * d + t), 0.0) for d in range(4, 10) for t in (0.0, 0.5, 1.0)]
        with pytest.raises(NumericalError, match="not positive"):
            fit_envelope(rows, "residual", c_ref=1.0, margin=0.5, min_samples=5)

    def test_samples_under_the_noise_floor_are_ignored(self):
        rows = synthetic(0.9, 2.0, 0.4) + [SweepSample(30.0, 0.0, 1e-16, 0.0, row=999)]
        fit = fit_envelope(rows, "residual", c_ref=2.0, margin=1.0)
        assert 999 not in fit.rows


def test_arrival_time_moves_out_with_distance():
    rows = synthetic(1.0, 2.0, 1.0)
    near, far = arrival_time(rows, "residual", 4.0, 1e-2), arrival_time(rows, "residual", 8.0, 1e-2)
    assert near is not None and far is not None and near < far


def test_sample_frame_keeps_the_column_order():
    rows = [SweepSample(3.0, 0.5, 1e-3, 2e-3, 0.0, 1, "5..6", 0.0, 4.0, 0.25, 7)]
    frame = samples_frame(rows)
    assert frame.columns.tolist()[: len(CSV_COLUMNS)] == list(CSV_COLUMNS)
    assert samples_from_frame(frame) == rows


def test_negative_fields_are_rejected():
    with pytest.raises(DomainError, match="residual"):
        SweepSample(1.0, 0.0, -1e-3, 0.0)


class TestSeparableOutsideQ:
    @staticmethod
    def rows(mu: float = 0.5, c: float = 2.0, negativity: float = 0.0) -> list[SweepSample]:
        out = []
        for d in (4.0, 6.0, 8.0, 10.0):
            for t in (0.0, 0.5, 1.0, 1.5):
                sep = 0.1 * math.exp(-2.0 * mu * (d - c * t))
                out.append(SweepSample(d, t, 0.0, 0.0, negativity=negativity, sep_lower=sep, d_q=d + 1.0, row=len(out)))
        return out

    def test_envelope_following_rows_pass(self):
        report = verify_theorem_a(self.rows(), 0.5, 2.0, 2.0, c_fit=2.0)
        assert report.passed and not report.vacuous
        assert report.checked_rows
        assert report.mu_sep_fit == pytest.approx(1.0)

    def test_early_negativity_fails(self):
        report = verify_theorem_a(self.rows(negativity=1e-3), 0.5, 2.0, 2.0, c_fit=2.0)
        assert not report.passed
        assert 0 in report.negativity_violations

    def test_checked_rows_keep_their_distance_from_the_cone(self):
        rows = self.rows()
        report = verify_theorem_a(rows, 0.5, 2.0, 2.0)
        checked = {s.row for s in rows if s.d_eff - 2.0 * s.t >= 2.0}
        assert set(report.checked_rows) == checked

    def test_growing_bounds_fail(self):
        rows = [replace(s, sep_lower=1e-3 * math.exp(0.8 * s.d)) for s in self.rows()]
        report = verify_theorem_a(rows, 0.5, 2.0, 2.0, c_fit=2.0)
        assert report.decay_failed
        assert not report.passed
        assert any("do not decay" in note for note in report.notes)

    def test_single_bound_above_the_envelope_fails(self):
        rows = self.rows()
        rows[12] = replace(rows[12], sep_lower=1e3 * rows[12].sep_lower)
        report = verify_theorem_a(rows, 0.5, 2.0, 2.0, c_fit=2.0)
        assert report.envelope_violations == (12,)
        assert not report.passed
        assert report.slack > 0.0

    def test_parameters_must_be_positive(self):
        with pytest.raises(DomainError, match="mu and c must be positive"):
            verify_theorem_a(self.rows(), 0.0, 2.0)


class TestEntangledInsideQ:
    def test_drop_inside_the_window_fails(self):
        rows = [SweepSample(6.0, t, 0.0, 0.0, sn_witness=2 if t < 1.0 else 1, row=i)
                for i, t in enumerate((0.0, 0.5, 1.0, 1.5, 3.0))]
        report = verify_theorem_b(rows, 2, 2.0, 6.0)
        assert report.window_end == pytest.approx(2.4)
        assert not report.passed
        assert report.failures == (2, 3)
        assert report.first_drop_time == 1.0

    def test_drop_after_the_window_passes(self):
        rows = [SweepSample(6.0, t, 0.0, 0.0, sn_witness=2 if t < 3.0 else 1, row=i)
                for i, t in enumerate((0.0, 1.0, 2.0, 3.0))]
        report = verify_theorem_b(rows, 2, 2.0, 6.0)
        assert report.passed
        assert report.first_drop_time == 3.0
