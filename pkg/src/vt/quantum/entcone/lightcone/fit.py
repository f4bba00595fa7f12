#!/usr/bin/env python3
# coding=utf-8

"""
Exponential light-cone envelopes ``value ~ C e^{-mu (d - c t)}`` fitted to sweep samples, and front extraction.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from vt.quantum.entcone.errors import DegenerateDesignError, DomainError, InsufficientSamplesError, NumericalError
from vt.quantum.entcone.lightcone.samples import SampleField, SweepSample

logger = logging.getLogger(__name__)

NOISE_FLOOR = 1e-13
CONE_MARGIN = 2.0
MIN_SAMPLES = 10
MU_REF = 0.5
VIOLATION_SIGMAS = 3.0


def reference_speed(tau: float, mu_ref: float = MU_REF) -> float:
    """
    ``2 tau sinh(mu_ref) / mu_ref``, the nearest-neighbour chain speed used as the initial exclusion cone.

    >>> round(reference_speed(1.0), 5)
    2.08436
    """
    return 2.0 * tau * math.sinh(mu_ref) / mu_ref


@dataclass(frozen=True)
class ConeFitResult:
    """
    Least-squares fit of ``log value = log C - mu d + mu c t`` over the usable samples.

    ``rows`` cites the sample rows the final fit used.
    """

    field: str
    mu_fit: float
    c_fit: float
    log_c_fit: float
    rms_log_residual: float
    samples_used: int
    noise_floor: float
    margin: float
    c_ref: float
    rows: tuple[int, ...] = ()
    refit: bool = False

    @property
    def correlation_length(self) -> float:
        return 1.0 / self.mu_fit

    def log_envelope(self, d: float, t: float) -> float:
        return self.log_c_fit - self.mu_fit * (d - self.c_fit * t)

    def as_dict(self) -> dict[str, object]:
        return {
            "field": self.field,
            "mu_fit": self.mu_fit,
            "c_fit": self.c_fit,
            "log_c_fit": self.log_c_fit,
            "rms_log_residual": self.rms_log_residual,
            "samples_used": self.samples_used,
            "noise_floor": self.noise_floor,
            "margin": self.margin,
            "c_ref": self.c_ref,
            "correlation_length": self.correlation_length,
            "refit": self.refit,
            "rows": list(self.rows),
        }


def _usable(
    samples: Sequence[SweepSample], field: SampleField, c: float, floor: float, margin: float
) -> list[SweepSample]:
    return [s for s in samples if s.value(field) > floor and s.d - c * s.t > margin]


def _least_squares(
    used: Sequence[SweepSample], field: SampleField, min_samples: int
) -> tuple[float, float, float, float]:
    if len(used) < min_samples:
        raise InsufficientSamplesError(
            f"insufficient samples: {len(used)} usable after exclusion, need {min_samples}."
        )
    d = np.array([s.d for s in used])
    t = np.array([s.t for s in used])
    if np.unique(d).size < 2:
        raise DegenerateDesignError("d")
    if np.unique(t).size < 2:
        raise DegenerateDesignError("t")
    y = np.log([s.value(field) for s in used])
    design = np.column_stack([np.ones_like(d), d, t])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    b0, b1, b2 = (float(c) for c in coef)
    mu = -b1
    if not mu > 0:
        raise NumericalError(f"fitted decay rate {mu:.6g} is not positive; the samples do not decay in d.")
    rms = float(np.sqrt(np.mean((design @ coef - y) ** 2)))
    return b0, mu, b2 / mu, rms


def fit_envelope(
    samples: Sequence[SweepSample],
    field: SampleField | str = SampleField.RESIDUAL,
    c_ref: float | None = None,
    *,
    tau: float = 1.0,
    noise_floor: float = NOISE_FLOOR,
    margin: float = CONE_MARGIN,
    min_samples: int = MIN_SAMPLES,
) -> ConeFitResult:
    """
    Fit the exponential envelope outside the cone ``d - c_ref t > margin``, then refit once with the fitted cone.

    >>> rows = [SweepSample(d, t, 0.3 * np.exp(-0.8 * (d - 1.7 * t)), 0.0)
    ...         for d in range(6, 16) for t in (0.0, 0.5, 1.0, 1.5)]
    >>> fit = fit_envelope(rows, "residual", c_ref=1.7)
    >>> round(fit.mu_fit, 6), round(fit.c_fit, 6), round(math.exp(fit.log_c_fit), 6)
    (0.8, 1.7, 0.3)

    :param samples: sweep rows.
    :param field: ``residual``, ``leakage`` or another nonnegative sample column.
    :param c_ref: initial exclusion speed, default ``2 tau sinh(0.5) / 0.5``.
    :param tau: hopping strength entering the default ``c_ref``.
    :param noise_floor: samples at or below it are ignored.
    :param margin: distance the samples must keep from the exclusion cone.
    :param min_samples: smallest usable sample count.
    :raises InsufficientSamplesError: fewer than ``min_samples`` usable samples.
    :raises DegenerateDesignError: usable samples span a single ``d`` or a single ``t``.
    :raises NumericalError: the fitted decay rate is not positive.
    """
    fld = SampleField(field)
    c0 = reference_speed(tau) if c_ref is None else c_ref
    used = _usable(samples, fld, c0, noise_floor, margin)
    b0, mu, c, rms = _least_squares(used, fld, min_samples)
    refit = False
    again = _usable(samples, fld, c, noise_floor, margin)
    if again != used:
        try:
            b0, mu, c, rms = _least_squares(again, fld, min_samples)
            used, refit = again, True
        except (DomainError, NumericalError) as err:
            logger.debug("keeping the first fit; refit with c=%.4g failed: %s", c, err)
    logger.debug("%s envelope: mu=%.4g c=%.4g from %d samples", fld, mu, c, len(used))
    return ConeFitResult(str(fld), mu, c, b0, rms, len(used), noise_floor, margin, c0,
                         tuple(s.row for s in used), refit)


def envelope_violations(
    samples: Sequence[SweepSample], fit: ConeFitResult, sigmas: float = VIOLATION_SIGMAS
) -> list[SweepSample]:
    """
    Samples of the fit that lie above ``log envelope + sigmas * rms``.

    An envelope holds only when this list is empty.
    """
    rows = set(fit.rows)
    fld = SampleField(fit.field)
    slack = sigmas * fit.rms_log_residual
    out = []
    for s in samples:
        if s.row in rows and s.value(fld) > fit.noise_floor:
            if math.log(s.value(fld)) > fit.log_envelope(s.d, s.t) + slack + 1e-12:
                out.append(s)
    return out


def arrival_time(
    samples: Sequence[SweepSample], field: SampleField | str, d: float, threshold: float
) -> float | None:
    """
    Smallest sampled time at which ``field`` at distance ``d`` exceeds ``threshold``.

    >>> rows = [SweepSample(5.0, t, 0.1 * t, 0.0) for t in (0.0, 1.0, 2.0, 3.0)]
    >>> arrival_time(rows, "residual", 5.0, 0.15)
    2.0
    >>> arrival_time(rows, "residual", 5.0, 1.0) is None
    True
    >>> arrival_time(rows, "residual", 6.0, 0.1)
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: distance 6.0 is not part of the sweep grid.

    :return: the arrival time, or ``None`` if the threshold is never exceeded.
    :raises DomainError: if ``d`` is not a sampled distance.
    """
    fld = SampleField(field)
    at_d = sorted((s for s in samples if s.d == d), key=lambda s: s.t)
    if not at_d:
        raise DomainError(f"distance {d} is not part of the sweep grid.")
    for s in at_d:
        if s.value(fld) > threshold:
            return s.t
    return None
