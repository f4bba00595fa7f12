#!/usr/bin/env python3
# coding=utf-8

"""
Localized truncations ``chi~_X(Gamma) = (chi_X (x) 1) Gamma (chi_X (x) 1)`` and pure-state Schmidt data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import final

import numpy as np
import scipy.linalg as la

from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.evolution import DensityOperator
from vt.quantum.entcone.lattice import Region, indicator_ab
from vt.quantum.entcone.linalg import Dims, ab_indices, block, dagger, hermitian_part

DEFAULT_RANK_TOLERANCE = 1e-8
WEIGHT_FLOOR = 1e-14


@final
@dataclass(frozen=True, eq=False)
class LocalizedState:
    """
    The sandwich of a state by ``chi_X (x) 1``, sub-normalized to ``weight = Tr chi~_X(Gamma)``.

    ``operator`` lives on the full space; ``matrix`` is its X-block on ``C^{|X|} (x) C^{d_B}``, which is where
    every entanglement quantity is evaluated.
    """

    operator: np.ndarray
    region: Region
    weight: float
    d_b: int

    @cached_property
    def matrix(self) -> np.ndarray:
        idx = ab_indices(self.region.indices, self.d_b)
        return block(self.operator, idx, idx)

    @property
    def dims(self) -> Dims:
        return len(self.region), self.d_b

    def normalized(self) -> DensityOperator:
        """
        The state ``Gamma_X = chi~_X(Gamma) / weight`` on the X-block.

        :raises DomainError: for a zero-weight truncation.
        """
        if self.weight <= WEIGHT_FLOOR:
            raise DomainError(f"region {self.region.label} carries no weight; nothing to normalize.")
        # round-off negatives blow up when the weight is small
        w, v = la.eigh(hermitian_part(self.matrix))
        w = np.clip(w, 0.0, None)
        m = (v * (w / w.sum())) @ dagger(v)
        return DensityOperator(hermitian_part(m), self.dims)


def localize(gamma: DensityOperator, x: Region) -> LocalizedState:
    """
    Exact localized truncation.

    >>> from vt.quantum.entcone.lattice import LatticeGeometry
    >>> chain = LatticeGeometry.chain(3)
    >>> psi = np.zeros(6)
    >>> psi[[0, 3]] = 1 / np.sqrt(2)
    >>> loc = localize(DensityOperator.from_vector(psi, (3, 2)), chain.region([0]))
    >>> round(loc.weight, 12)
    0.5
    >>> loc.matrix.real.round(12).tolist()
    [[0.5, 0.0], [0.0, 0.0]]

    :param gamma: state on ``l^2(Lambda) (x) C^{d_B}``.
    :param x: region of the same lattice.
    """
    size, d_b = gamma.dims
    if x.parent.size != size:
        raise DomainError(f"region of a {x.parent.size}-site lattice applied to a {size}-site state.")
    p = indicator_ab(x, d_b)
    op = p @ gamma.matrix @ p
    return LocalizedState(op, x, float(np.trace(op).real), d_b)


@dataclass(frozen=True)
class SchmidtSpectrum:
    """
    Singular values of the coefficient matrix of a pure state and the gap at the rank cut.

    ``gap`` is ``(last kept, first dropped)`` relative to the largest singular value; the dropped entry is zero
    when nothing was cut.
    """

    singular_values: tuple[float, ...]
    rank: int
    tolerance: float
    gap: tuple[float, float]


def schmidt_spectrum(psi: np.ndarray, dims: Dims, tol: float = DEFAULT_RANK_TOLERANCE) -> SchmidtSpectrum:
    """
    >>> schmidt_spectrum(np.array([1.0, 0.0, 0.0, 1.0]), (2, 2)).rank
    2

    :param psi: vector on ``C^{d_A} (x) C^{d_B}`` in the ``np.kron`` ordering.
    :param dims: ``(d_A, d_B)``.
    :param tol: singular values below ``tol * largest`` are dropped.
    :raises DomainError: for the zero vector or a size mismatch.
    """
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.size != dims[0] * dims[1]:
        raise DomainError(f"vector of length {v.size} does not match dims {dims}.")
    if not np.any(v):
        raise DomainError("Schmidt rank of the zero vector is undefined.")
    s = la.svdvals(v.reshape(dims))
    rel = s / s[0]
    rank = int(np.sum(rel > tol))
    kept = float(rel[rank - 1])
    dropped = float(rel[rank]) if rank < rel.size else 0.0
    return SchmidtSpectrum(tuple(float(x) for x in s), rank, tol, (kept, dropped))


def schmidt_rank(psi: np.ndarray, dims: Dims, tol: float = DEFAULT_RANK_TOLERANCE) -> int:
    """
    Number of Schmidt coefficients above ``tol`` relative to the largest.

    >>> eps = 1e-12
    >>> schmidt_rank(np.array([1.0, 0.0, 0.0, eps]), (2, 2))
    1
    >>> schmidt_rank(np.array([1.0, 0.0, 0.0, 0.0]), (2, 2))
    1
    >>> schmidt_rank(np.zeros(4), (2, 2))
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: Schmidt rank of the zero vector is undefined.
    """
    return schmidt_spectrum(psi, dims, tol).rank

