#!/usr/bin/env python3
# coding=utf-8

"""
Exact von Neumann evolution ``Gamma_t = e^{-iHt} Gamma_0 e^{iHt}``, the localized Duhamel residual and the
particle propagator leakage ``||chi_X e^{-iH_A s} chi_Y||``.
"""

from __future__ import annotations

import logging

import numpy as np

from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.evolution.density import DensityOperator, ModelCaches, SpectralCache, SpectralSource
from vt.quantum.entcone.lattice import Region
from vt.quantum.entcone.linalg import ab_indices, block, operator_norm, trace_norm

logger = logging.getLogger(__name__)

DUHAMEL_STEP = 0.02


def _check_dims(gamma: DensityOperator, cache: SpectralCache) -> None:
    if gamma.dimension != cache.dimension:
        raise DomainError(
            f"state of dimension {gamma.dimension} cannot evolve under a {cache.source} of dimension {cache.dimension}."
        )


def evolve(gamma0: DensityOperator, cache: SpectralCache, t: float) -> DensityOperator:
    """
    Solve ``d Gamma / dt = -i[H, Gamma]`` exactly through the spectral cache.

    >>> from vt.quantum.entcone.evolution.density import SpectralSource
    >>> cache = SpectralCache.from_matrix(np.diag([0.0, 1.0]), SpectralSource.HAB)
    >>> g = DensityOperator(np.diag([0.3, 0.7]).astype(complex), (2, 1))
    >>> assert np.array_equal(evolve(g, cache, 0.0).matrix, g.matrix)
    >>> assert np.allclose(evolve(g, cache, 5.0).matrix, g.matrix)

    :param gamma0: initial state.
    :param cache: spectral cache of the generator.
    :param t: time.
    :raises DomainError: on a dimension mismatch.
    """
    _check_dims(gamma0, cache)
    if t == 0.0:
        return gamma0
    return gamma0.with_matrix(cache.conjugate(gamma0.matrix, t))


def free_evolve(gamma0: DensityOperator, cache_h0: SpectralCache, t: float) -> DensityOperator:
    """
    ``e^{tL_0} Gamma_0`` with ``L_0 Gamma = -i[H_0, Gamma]``.

    :raises DomainError: when ``cache_h0`` does not hold ``H_0``.
    """
    if cache_h0.source is not SpectralSource.H0:
        raise DomainError(f"free evolution needs the H_0 cache, got {cache_h0.source}.")
    return evolve(gamma0, cache_h0, t)


def localized_norm(m: np.ndarray, x: Region, d_b: int) -> float:
    """
    ``||(chi_X (x) 1) m (chi_X (x) 1)||_1``, computed on the X-block.
    """
    idx = ab_indices(x.indices, d_b)
    return trace_norm(block(m, idx, idx))


def duhamel_residual_norm(x: Region, gamma0: DensityOperator, t: float, caches: ModelCaches) -> float:
    """
    ``||chi~_X (Gamma_t - e^{tL_0} Gamma_0)||_1``: the part of the state in ``X`` caused by the coupling.

    :param x: probe region.
    :param gamma0: initial state.
    :param t: time.
    :param caches: spectral caches of the model.
    """
    if t == 0.0:
        return 0.0
    diff = evolve(gamma0, caches.hab, t).matrix - free_evolve(gamma0, caches.h0, t).matrix
    return localized_norm(diff, x, caches.model.b.dim)


def duhamel_reconstruction(
    gamma0: DensityOperator, t: float, caches: ModelCaches, *, max_step: float | None = None
) -> np.ndarray:
    """
    ``e^{tL_0} Gamma_0 + int_0^t e^{(t-s)L_0} I^ Gamma_s ds`` with ``I^ Gamma = -i[I, Gamma]``, by composite
    Simpson quadrature. Agrees with ``evolve(gamma0, caches.hab, t)`` up to the quadrature error.

    :param max_step: quadrature step cap, default ``0.02 / max(||I||, spread(H_AB))``.
    :return: the reconstructed ``Gamma_t`` as a matrix.
    """
    coupling = caches.model.coupling.matrix
    free = free_evolve(gamma0, caches.h0, t).matrix
    norm_i = operator_norm(coupling)
    if t == 0.0 or norm_i == 0.0:
        return free
    h = max_step or DUHAMEL_STEP / max(norm_i, caches.hab.spread, 1e-12)
    intervals = int(np.ceil(t / h))
    intervals += intervals % 2
    s = np.linspace(0.0, t, intervals + 1)
    weights = np.ones(intervals + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    weights *= (t / intervals) / 3.0
    total = np.zeros_like(free)
    for s_k, w_k in zip(s, weights):
        gs = caches.hab.conjugate(gamma0.matrix, s_k)
        integrand = -1j * (coupling @ gs - gs @ coupling)
        total += w_k * caches.h0.conjugate(integrand, t - s_k)
    logger.debug("Duhamel quadrature with %d intervals up to t=%g", intervals, t)
    return free + total


def propagator_leakage(x: Region, y: Region, cache_a: SpectralCache, s: float) -> float:
    """
    Operator norm of the X-rows/Y-columns block of ``e^{-iH_A s}``.

    >>> from vt.quantum.entcone.lattice import LatticeGeometry
    >>> from vt.quantum.entcone.evolution.density import SpectralSource
    >>> chain = LatticeGeometry.chain(4)
    >>> cache = SpectralCache.from_matrix(np.eye(4), SpectralSource.HA)
    >>> propagator_leakage(chain.region([0]), chain.region([3]), cache, 0.0)
    0.0
    >>> propagator_leakage(chain.region([0, 1]), chain.region([1]), cache, 0.0)
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: leakage needs disjoint regions, got 0..1 and 1.

    :raises DomainError: on overlapping regions or a cache of the wrong size.
    """
    if x.intersects(y):
        raise DomainError(f"leakage needs disjoint regions, got {x.label} and {y.label}.")
    if cache_a.dimension != x.parent.size:
        raise DomainError(f"H_A cache has dimension {cache_a.dimension}, lattice has {x.parent.size} sites.")
    if s == 0.0:
        return 0.0
    return operator_norm(block(cache_a.propagator(s), x.indices, y.indices))


def free_block(cache_a: SpectralCache, x: Region, y: Region, s: float) -> np.ndarray:
    """
    The block ``chi_X e^{-iH_A s} chi_Y`` itself.
    """
    return block(cache_a.propagator(s), x.indices, y.indices)

