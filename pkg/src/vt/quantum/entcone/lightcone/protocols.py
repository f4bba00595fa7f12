#!/usr/bin/env python3
# coding=utf-8

"""
Report-based experiment protocols over sweep samples.

``verify_theorem_a``: a state separable outside ``Q`` stays close to separable in a probe ``X`` until the cone of
``Y`` (or the spread of ``Q``) reaches it; the separability lower bounds must sit under a fitted
``A e^{-2 mu (d - c t)}`` envelope and the negativity must vanish in an early window.

``verify_theorem_b``: a state entangled inside ``Q`` stays entangled in every ``X`` containing ``Q`` for times
below ``d' / c`` with ``d' = min(d_XY, d_{X^c Q})``.

Assertion windows carry a factor 0.8 for the unknown constants; every report records it.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from vt.quantum.entcone.errors import DomainError, NumericalError
from vt.quantum.entcone.lightcone.fit import CONE_MARGIN, MIN_SAMPLES, NOISE_FLOOR, VIOLATION_SIGMAS, fit_envelope
from vt.quantum.entcone.lightcone.samples import SampleField, SweepSample

logger = logging.getLogger(__name__)

WINDOW_FACTOR = 0.8
NEGATIVITY_TOLERANCE = 1e-6


@dataclass(frozen=True)
class TheoremAReport:
    """
    Outcome of the separable-outside-Q protocol.

    ``amplitude`` is the regression intercept ``A`` of ``A e^{-2 mu (d - c t)}`` and ``slack`` the ``3 rms`` band
    above it that no checked sample may cross. ``mu_sep_fit`` and ``c_sep_fit`` come from a
    free fit of the separability lower bounds, reported next to the assumed exponent ``2 mu``; positive bounds
    that do not decay in ``d`` set ``decay_failed``.
    """

    mu: float
    c: float
    c_fit: float
    margin: float
    window_factor: float
    amplitude: float
    checked_rows: tuple[int, ...]
    envelope_violations: tuple[int, ...]
    window_rows: tuple[int, ...]
    negativity_violations: tuple[int, ...]
    vacuous: bool
    mu_sep_fit: float | None = None
    c_sep_fit: float | None = None
    notes: tuple[str, ...] = field(default=())
    slack: float = 0.0
    decay_failed: bool = False

    @property
    def passed(self) -> bool:
        if self.negativity_violations:
            return False
        if self.vacuous or not self.checked_rows:
            return True
        return not self.envelope_violations and not self.decay_failed

    def as_dict(self) -> dict[str, object]:
        return {
            "passed": self.passed,
            "mu": self.mu,
            "c": self.c,
            "c_fit": self.c_fit,
            "margin": self.margin,
            "window_factor": self.window_factor,
            "amplitude": self.amplitude,
            "slack": self.slack,
            "decay_failed": self.decay_failed,
            "vacuous": self.vacuous,
            "mu_sep_fit": self.mu_sep_fit,
            "c_sep_fit": self.c_sep_fit,
            "checked_rows": list(self.checked_rows),
            "envelope_violations": list(self.envelope_violations),
            "window_rows": list(self.window_rows),
            "negativity_violations": list(self.negativity_violations),
            "notes": list(self.notes),
        }


def verify_theorem_a(
    samples: Sequence[SweepSample],
    mu: float,
    c: float,
    margin: float = CONE_MARGIN,
    *,
    c_fit: float | None = None,
    window_factor: float = WINDOW_FACTOR,
    noise_floor: float = NOISE_FLOOR,
    min_samples: int = MIN_SAMPLES,
) -> TheoremAReport:
    """
    Check separability lower bounds against a fitted ``A e^{-2 mu (d - c t)}`` on the samples with
    ``d - c t >= margin`` (``d = min(d_XY, d_XQ)``), and the negativity in ``X`` on ``t < window_factor d / c_fit``.

    >>> rows = [SweepSample(d, t, 0.0, 0.0, row=i) for i, (d, t) in enumerate([(4, 0.0), (5, 0.5), (6, 1.0)])]
    >>> r = verify_theorem_a(rows, 0.5, 2.0)
    >>> r.vacuous, r.passed
    (True, True)

    :param samples: sweep rows of probes disjoint from ``Y`` and ``Q``.
    :param mu: decay rate of the envelope, used with exponent ``2 mu``.
    :param c: cone speed selecting the checked samples.
    :param margin: distance the checked samples keep from the cone.
    :param c_fit: fitted speed for the negativity window, ``c`` when omitted.
    :param min_samples: positive bounds needed before a failed decay fit counts against the protocol.
    """
    if not mu > 0 or not c > 0:
        raise DomainError(f"mu and c must be positive, got {mu}, {c}.")
    speed = c if c_fit is None else c_fit
    checked = [s for s in samples if s.d_eff - c * s.t >= margin]
    positive = [s for s in checked if s.sep_lower > noise_floor]
    amplitude = 0.0
    slack = 0.0
    violations: list[int] = []
    notes: list[str] = []
    if positive:
        x = np.array([s.d_eff - c * s.t for s in positive])
        # intercept of log sep_lower + 2 mu x with the slope fixed at -2 mu
        logs = np.log([s.sep_lower for s in positive]) + 2.0 * mu * x
        log_a = float(np.mean(logs))
        slack = VIOLATION_SIGMAS * float(np.sqrt(np.mean((logs - log_a) ** 2)))
        amplitude = math.exp(log_a)
        violations = [s.row for s, li in zip(positive, logs) if li > log_a + slack + 1e-12]
    window = [s for s in samples if s.t < window_factor * s.d_eff / speed]
    neg_bad = [s.row for s in window if s.negativity > NEGATIVITY_TOLERANCE]
    mu_sep = c_sep = None
    decay_failure = None
    if positive:
        try:
            sep_fit = fit_envelope(
                checked, SampleField.SEP_LOWER, c, noise_floor=noise_floor, margin=margin, min_samples=min_samples
            )
            mu_sep, c_sep = sep_fit.mu_fit, sep_fit.c_fit
        except NumericalError as err:
            decay_failure = f"separability bounds do not decay: {err}"
        except DomainError as err:
            if len(positive) >= min_samples:
                decay_failure = f"separability bounds could not be fitted: {err}"
            else:
                notes.append(f"separability bounds not fitted: {err}")
    if decay_failure:
        logger.warning(decay_failure)
        notes.append(decay_failure)
    if neg_bad:
        logger.warning("negativity above %.1g in the early window at rows %s", NEGATIVITY_TOLERANCE, neg_bad)
    return TheoremAReport(
        mu,
        c,
        speed,
        margin,
        window_factor,
        amplitude,
        tuple(s.row for s in checked),
        tuple(violations),
        tuple(s.row for s in window),
        tuple(neg_bad),
        not positive,
        mu_sep,
        c_sep,
        tuple(notes),
        slack,
        decay_failure is not None,
    )


@dataclass(frozen=True)
class TheoremBReport:
    """
    Outcome of the entangled-inside-Q protocol for one probe ``X`` containing ``Q``.
    """

    k: int
    d_prime: float
    c_fit: float
    window_factor: float
    window_end: float
    checked_rows: tuple[int, ...]
    failures: tuple[int, ...]
    first_drop_time: float | None
    flags: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict[str, object]:
        return {
            "passed": self.passed,
            "k": self.k,
            "d_prime": self.d_prime,
            "c_fit": self.c_fit,
            "window_factor": self.window_factor,
            "window_end": self.window_end,
            "first_drop_time": self.first_drop_time,
            "checked_rows": list(self.checked_rows),
            "failures": list(self.failures),
            "flags": list(self.flags),
        }


def verify_theorem_b(
    samples: Sequence[SweepSample],
    k: int,
    c_fit: float,
    d_prime: float,
    *,
    window_factor: float = WINDOW_FACTOR,
) -> TheoremBReport:
    """
    Check that the Schmidt-number witness in ``X`` stays ``>= k`` for ``t < window_factor d' / c_fit``.

    >>> rows = [SweepSample(4.0, t, 0.0, 0.0, sn_witness=2, row=i) for i, t in enumerate((0.0, 0.5, 1.0, 2.0))]
    >>> r = verify_theorem_b(rows, 2, 2.0, 4.0)
    >>> r.passed, r.window_end, r.checked_rows
    (True, 1.6, (0, 1, 2))

    With ``d' = 0`` there is nothing to assert:

    >>> verify_theorem_b(rows, 2, 2.0, 0.0).flags
    ("d' too small",)

    :param samples: rows of a single probe ``X`` containing ``Q``.
    :param k: Schmidt rank of the initial state.
    :param c_fit: fitted cone speed.
    :param d_prime: ``min(d_XY, d_{X^c Q})``.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}.")
    if not c_fit > 0:
        raise DomainError(f"c_fit must be positive, got {c_fit}.")
    end = window_factor * d_prime / c_fit
    flags: list[str] = []
    if d_prime <= 0:
        flags.append("d' too small")
    ordered = sorted(samples, key=lambda s: s.t)
    checked = [s for s in ordered if s.t < end]
    failures = tuple(s.row for s in checked if s.sn_witness < k)
    drop = next((s.t for s in ordered if s.sn_witness < k), None)
    if failures:
        logger.warning("Schmidt-number witness fell below %d inside the window at rows %s", k, failures)
    return TheoremBReport(
        k, d_prime, c_fit, window_factor, end, tuple(s.row for s in checked), failures, drop, tuple(flags)
    )
