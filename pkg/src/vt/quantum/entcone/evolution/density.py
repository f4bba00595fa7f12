#!/usr/bin/env python3
# coding=utf-8

"""
Density operators on ``l^2(Lambda) (x) C^{d_B}`` and the spectral caches that propagate them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import final

import numpy as np
import scipy.linalg as la

from vt.quantum.entcone.errors import DomainError, NumericalError
from vt.quantum.entcone.linalg import Dims, dagger, hermitian_part, hermiticity_residual, min_eigenvalue
from vt.quantum.entcone.model import BipartiteModel

HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10


@final
@dataclass(frozen=True, eq=False)
class DensityOperator:
    """
    Hermitian, nonnegative operator with a recorded trace.

    Proper states have ``normalization == 1``; localized truncations keep their smaller trace as the normalization.

    >>> rho = DensityOperator.from_vector(np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2), (2, 2))
    >>> rho.trace, rho.is_pure
    (1.0, True)

    >>> DensityOperator(np.diag([0.5, 0.25]), (2, 1))
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: trace 0.75 differs from the normalization 1.
    """

    matrix: np.ndarray
    dims: Dims
    normalization: float = 1.0

    def __post_init__(self):
        n = self.dims[0] * self.dims[1]
        if self.matrix.shape != (n, n):
            raise DomainError(f"density matrix must be {n}x{n} for dims {self.dims}, got {self.matrix.shape}.")
        scale = max(1.0, self.normalization)
        res = hermiticity_residual(self.matrix)
        if res > HERMITIAN_TOLERANCE * scale:
            raise DomainError(f"density matrix is not Hermitian (residual {res:.3g}).")
        tr = float(np.trace(self.matrix).real)
        if abs(tr - self.normalization) > TRACE_TOLERANCE * scale:
            raise DomainError(f"trace {tr:.6g} differs from the normalization {self.normalization:.6g}.")
        if n and min_eigenvalue(self.matrix) < -PSD_TOLERANCE:
            raise DomainError("density matrix has a negative eigenvalue.")

    # region constructors
    @classmethod
    def from_vector(cls, psi: np.ndarray, dims: Dims) -> DensityOperator:
        """
        Projector onto the normalized vector ``psi``.
        """
        v = np.asarray(psi, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise DomainError("cannot build a state from the zero vector.")
        v = v / norm
        return cls(np.outer(v, v.conj()), dims)

    @classmethod
    def from_matrix(cls, m: np.ndarray, dims: Dims) -> DensityOperator:
        """
        Symmetrize round-off and record the actual trace as the normalization.
        """
        h = hermitian_part(np.asarray(m, dtype=complex))
        return cls(h, dims, float(np.trace(h).real))

    # endregion

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def is_pure(self) -> bool:
        """
        Rank one up to ``1e-10`` relative to the trace.
        """
        if self.trace <= 0:
            return False
        w = la.eigvalsh(self.matrix)
        return bool(np.sum(w > 1e-10 * self.trace) == 1)

    def vector(self) -> np.ndarray:
        """
        Leading eigenvector scaled by the square root of its eigenvalue; exact for pure operators.
        """
        w, v = la.eigh(self.matrix)
        return v[:, -1] * np.sqrt(max(w[-1], 0.0))

    def with_matrix(self, m: np.ndarray) -> DensityOperator:
        """
        Same dims and normalization, new matrix (e.g. after a unitary conjugation).
        """
        return DensityOperator(hermitian_part(m), self.dims, self.normalization)


class SpectralSource(StrEnum):
    HAB = "hab"
    H0 = "h0"
    HA = "ha"
    HB = "hb"


@final
@dataclass(frozen=True, eq=False)
class SpectralCache:
    """
    Eigendecomposition ``H = U diag(lambda) U*`` used for exact propagation ``e^{-iHt}``.

    >>> c = SpectralCache.from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]), SpectralSource.HA)
    >>> assert np.allclose(c.propagator(np.pi / 2), [[0, -1j], [-1j, 0]])
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    source: SpectralSource

    @classmethod
    def from_matrix(cls, h: np.ndarray, source: SpectralSource) -> SpectralCache:
        """
        :raises NumericalError: if the reconstruction residual exceeds ``1e-9 ||H||``.
        """
        hh = hermitian_part(np.asarray(h, dtype=complex))
        w, u = la.eigh(hh)
        residual = float(np.max(np.abs(hh - (u * w) @ dagger(u)), initial=0.0))
        scale = max(float(np.max(np.abs(w), initial=0.0)), 1.0)
        if residual > 1e-9 * scale:
            raise NumericalError(f"eigendecomposition of {source} reconstructs with residual {residual:.3g}.")
        return cls(w, u, source)

    @property
    def dimension(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def spread(self) -> float:
        """
        ``lambda_max - lambda_min``.
        """
        return float(self.eigenvalues[-1] - self.eigenvalues[0])

    def propagator(self, t: float) -> np.ndarray:
        """
        ``e^{-iHt}``.
        """
        return (self.eigenvectors * np.exp(-1j * self.eigenvalues * t)) @ dagger(self.eigenvectors)

    def conjugate(self, m: np.ndarray, t: float) -> np.ndarray:
        """
        ``e^{-iHt} m e^{iHt}``.
        """
        p = self.propagator(t)
        return p @ m @ dagger(p)


@final
@dataclass(frozen=True, eq=False)
class ModelCaches:
    """
    Spectral caches of every Hamiltonian of a model, shared read-only by all sweep workers.
    """

    hab: SpectralCache
    h0: SpectralCache
    a: SpectralCache
    b: SpectralCache
    model: BipartiteModel

    @classmethod
    def from_model(cls, model: BipartiteModel) -> ModelCaches:
        return cls(
            SpectralCache.from_matrix(model.hab, SpectralSource.HAB),
            SpectralCache.from_matrix(model.h0, SpectralSource.H0),
            SpectralCache.from_matrix(model.a.matrix, SpectralSource.HA),
            SpectralCache.from_matrix(model.b.matrix, SpectralSource.HB),
            model,
        )
