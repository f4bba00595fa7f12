#!/usr/bin/env python3
# coding=utf-8

"""
Numerical checks of the trace-norm estimates behind the light-cone bounds.

Each check computes both sides of an inequality on dense matrices, returns a report, and raises ``LemmaCheckError``
when the inequality fails beyond round-off.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from vt.quantum.entcone.errors import DomainError, LemmaCheckError
from vt.quantum.entcone.evolution.density import DensityOperator, ModelCaches
from vt.quantum.entcone.evolution.dynamics import evolve, free_block, localized_norm
from vt.quantum.entcone.lattice import Region, indicator_ab
from vt.quantum.entcone.linalg import dagger, operator_norm, trace_norm
from vt.quantum.entcone.model import BipartiteModel

logger = logging.getLogger(__name__)

UNIFORM_BOUND_SLACK = 1e-8
CHAIN_SLACK = 1e-10


@dataclass(frozen=True)
class UniformBoundReport:
    """
    Observed growth of ``||(H_0 + 1) Gamma_t||_1`` against the constant ``||J^{-1} J_AB|| ||J_AB^{-1} J||``.
    """

    c_observed: float
    c_lemma: float
    worst_time: float
    weighted_norm_0: float

    @property
    def passed(self) -> bool:
        return self.c_observed <= self.c_lemma + UNIFORM_BOUND_SLACK


def weighted_norm(model: BipartiteModel, m: np.ndarray) -> float:
    """
    ``||J^{-1} m||_1 = ||(H_0 + 1) m||_1``.
    """
    return trace_norm((model.h0 + np.eye(model.dimension)) @ m)


def weighted_uniform_bound_check(
    gamma0: DensityOperator, t_grid: Sequence[float], model: BipartiteModel, caches: ModelCaches | None = None
) -> UniformBoundReport:
    """
    ``||J^{-1} Gamma_t||_1 <= C ||J^{-1} Gamma_0||_1`` uniformly in ``t``, with ``J = (H_0 + 1)^{-1}``.

    :param gamma0: initial state.
    :param t_grid: times at which ``Gamma_t`` is sampled.
    :param model: bipartite model; its coupling must satisfy the relative bounds.
    :param caches: spectral caches, built from ``model`` when omitted.
    :raises DomainError: when the relative bounds fail.
    :raises LemmaCheckError: with both constants when the observed ratio exceeds the constant.
    """
    if not model.report.satisfied:
        raise DomainError("uniform bound check needs alpha4 < 1 and alpha5 < 1.")
    caches = caches or ModelCaches.from_model(model)
    eye = np.eye(model.dimension)
    c_lemma = operator_norm((model.h0 + eye) @ model.j_ab) * operator_norm((model.hab + eye) @ model.j)
    base = weighted_norm(model, gamma0.matrix)
    worst, worst_t = 0.0, 0.0
    for t in t_grid:
        ratio = weighted_norm(model, evolve(gamma0, caches.hab, float(t)).matrix) / base
        if ratio > worst:
            worst, worst_t = ratio, float(t)
    report = UniformBoundReport(worst, c_lemma, worst_t, base)
    logger.debug("uniform bound: C_obs=%.10g C_lem=%.10g", worst, c_lemma)
    if not report.passed:
        raise LemmaCheckError("weighted trace norm grew beyond the uniform constant", {"C_obs": worst, "C_lem": c_lemma})
    return report


@dataclass(frozen=True)
class EstimateChainReport:
    """
    Worst ratios of the two integrand inequalities over the sampled ``s``, and the integrated bound.

    ``first_ratio`` compares ``||chi~_X e^{(t-s)L_0} I^ Gamma_s||_1`` with
    ``||chi_X e^{-i(t-s)H_A} chi_Y|| (||I Gamma_s||_1 + ||Gamma_s I||_1)``; ``second_ratio`` compares the latter
    with ``2 ||chi_X e^{-i(t-s)H_A} chi_Y|| ||IJ|| ||J^{-1} Gamma_s||_1``.
    """

    t: float
    first_ratio: float
    second_ratio: float
    residual: float
    integrated_bound: float
    s_points: int

    @property
    def passed(self) -> bool:
        return self.first_ratio <= 1.0 + CHAIN_SLACK and self.second_ratio <= 1.0 + CHAIN_SLACK


def estimate_chain_check(
    x: Region, gamma0: DensityOperator, t: float, caches: ModelCaches, *, s_points: int = 41
) -> EstimateChainReport:
    """
    Sample the integrand of the localized Duhamel term and check the estimate chain that bounds it by the free
    propagator leakage from ``Y`` into ``X``.

    :param x: probe region, disjoint from the coupling support.
    :raises DomainError: when ``x`` meets the coupling support.
    :raises LemmaCheckError: when an inequality of the chain fails.
    """
    model = caches.model
    y = model.coupling.support
    if x.intersects(y):
        raise DomainError(f"probe {x.label} meets the coupling support {y.label}.")
    d_b = model.b.dim
    coupling = model.coupling.matrix
    ij = operator_norm(coupling @ model.j)
    s_grid = np.linspace(0.0, t, max(s_points, 2))
    first = second = 0.0
    bounds = []
    for s in s_grid:
        gs = caches.hab.conjugate(gamma0.matrix, s) if s else gamma0.matrix
        lhs = localized_norm(caches.h0.conjugate(-1j * (coupling @ gs - gs @ coupling), t - s), x, d_b)
        leak = operator_norm(free_block(caches.a, x, y, t - s))
        middle = leak * (trace_norm(coupling @ gs) + trace_norm(gs @ coupling))
        right = 2.0 * leak * ij * weighted_norm(model, gs)
        bounds.append(right)
        if middle > 0:
            first = max(first, lhs / middle)
        elif lhs > CHAIN_SLACK:
            first = np.inf
        if right > 0:
            second = max(second, middle / right)
    integrated = float(trapezoid(bounds, s_grid)) if t > 0 else 0.0
    residual = 0.0
    if t > 0:
        gt = evolve(gamma0, caches.hab, t).matrix
        residual = localized_norm(gt - caches.h0.conjugate(gamma0.matrix, t), x, d_b)
    report = EstimateChainReport(float(t), float(first), float(second), residual, integrated, len(s_grid))
    if not report.passed:
        raise LemmaCheckError(
            "Duhamel integrand exceeds its leakage bound", {"first_ratio": first, "second_ratio": second}
        )
    return report


@dataclass(frozen=True)
class RemainderReport:
    """
    ``||chi~_X e^{tL_0} Gamma_0''||_1`` against ``3 ||chi_X e^{-iH_A t} chi_Q|| ||Gamma_0||_1``.
    """

    t: float
    remainder: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.remainder <= self.bound + CHAIN_SLACK


def semilocalized_remainder_check(
    x: Region, q: Region, gamma0: DensityOperator, t: float, caches: ModelCaches
) -> RemainderReport:
    """
    Bound the free evolution of the part of ``Gamma_0`` with at least one leg in ``Q``,
    ``Gamma_0'' = chi_Q Gamma chi_Q + chi_Q Gamma chi_Q^c + chi_Q^c Gamma chi_Q``, by the leakage out of ``Q``.

    :raises LemmaCheckError: when the remainder exceeds the bound.
    """
    d_b = caches.model.b.dim
    pq = indicator_ab(q, d_b)
    pqc = indicator_ab(q.complement(), d_b)
    g = gamma0.matrix
    semilocal = pq @ g @ pq + pq @ g @ pqc + pqc @ g @ pq
    remainder = localized_norm(caches.h0.conjugate(semilocal, t), x, d_b)
    leak = operator_norm(free_block(caches.a, x, q, t))
    report = RemainderReport(float(t), remainder, 3.0 * leak * trace_norm(g))
    if not report.passed:
        raise LemmaCheckError(
            "semi-localized remainder exceeds its leakage bound",
            {"remainder": report.remainder, "bound": report.bound},
        )
    return report


@dataclass(frozen=True)
class DualityReport:
    """
    ``max |Tr(A lambda)|`` over random contractions ``A`` and the value at the polar-decomposition maximizer.
    """

    trace_norm: float
    max_sampled: float
    attained: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.max_sampled <= self.trace_norm + 1e-10 and abs(self.attained - self.trace_norm) <= 1e-10


def trace_norm_duality_check(lam: np.ndarray, rng: np.random.Generator, samples: int = 100) -> DualityReport:
    """
    ``||lambda||_1 = sup_{||A|| = 1} |Tr(A lambda)|``: random unit-norm ``A`` never exceed the trace norm and
    ``A = V U*`` from the SVD ``lambda = U S V*`` attains it.

    >>> lam = np.random.default_rng(3).normal(size=(4, 4))
    >>> trace_norm_duality_check(lam, np.random.default_rng(4)).passed
    True
    """
    n, m = lam.shape
    norm = trace_norm(lam)
    worst = 0.0
    for _ in range(samples):
        a = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
        a /= operator_norm(a)
        worst = max(worst, abs(np.trace(a @ lam)))
    u, _, vh = np.linalg.svd(lam, full_matrices=False)
    attained = abs(np.trace(dagger(vh) @ dagger(u) @ lam))
    return DualityReport(norm, float(worst), float(attained), samples)


def adjoint_norm_gap(lam: np.ndarray) -> float:
    """
    ``| ||lambda||_1 - ||lambda*||_1 |``.

    >>> adjoint_norm_gap(np.array([[0.0, 2.0], [0.0, 0.0]]))
    0.0
    """
    return abs(trace_norm(lam) - trace_norm(dagger(lam)))
