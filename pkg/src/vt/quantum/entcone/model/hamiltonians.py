#!/usr/bin/env python3
# coding=utf-8

"""
Single-system Hamiltonians: the lattice particle ``H_A = T + V`` and the finite-level system ``H_B``.

Both are stored together with the constant spectral shift that makes them nonnegative. The shift does not change any
commutator, so it is dynamically irrelevant; it only enters the resolvent weights ``(H_0 + 1)^(-1)``.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import final

import numpy as np

from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.lattice import LatticeGeometry
from vt.quantum.entcone.linalg import hermiticity_residual, min_eigenvalue

logger = logging.getLogger(__name__)

PSD_TOLERANCE = 1e-10
"""
Smallest eigenvalue accepted as nonnegative after the spectral shift.
"""


def _auto_shift(min_eig: float) -> float:
    return -min_eig if min_eig < 0.0 else 0.0


def _assemble(
    size: int, hopping: Mapping[tuple[int, int], complex], potential: np.ndarray
) -> np.ndarray:
    m = np.zeros((size, size), dtype=complex)
    for (x, y), t_xy in hopping.items():
        m[x, y] = t_xy
    m[np.diag_indices(size)] += potential
    return m


@final
@dataclass(frozen=True, eq=False)
class SystemAHamiltonian:
    """
    Hopping Hamiltonian of the lattice particle, ``H_A = T + V + shift``.

    ``hopping`` holds both orientations of every bond. Exponential locality ``|t_xy| <= C e^{-a |x - y|}`` is
    checked at construction against the declared ``decay_constant`` ``C`` and ``decay_rate`` ``a``.
    """

    geometry: LatticeGeometry
    hopping: Mapping[tuple[int, int], complex]
    potential: np.ndarray
    spectral_shift: float
    decay_constant: float
    decay_rate: float
    tau: float = field(default=0.0)

    def __post_init__(self):
        size = self.geometry.size
        if self.potential.shape != (size,):
            raise DomainError(f"potential must have {size} entries, got shape {self.potential.shape}.")
        if not np.all(np.isfinite(self.potential)):
            raise DomainError("potential must be finite (bounded V).")
        dist = self.geometry.distance_matrix
        for (x, y), t_xy in self.hopping.items():
            if x == y:
                raise DomainError(f"on-site term at {x} belongs in the potential, not the hopping.")
            back = self.hopping.get((y, x))
            if back is None or abs(back - np.conj(t_xy)) > 1e-14:
                raise DomainError(f"hopping is not Hermitian on bond ({x}, {y}).")
            bound = self.decay_constant * np.exp(-self.decay_rate * dist[x, y])
            if abs(t_xy) > bound * (1 + 1e-12):
                raise DomainError(
                    f"hopping |t_{x}{y}|={abs(t_xy):.6g} exceeds the locality bound {bound:.6g}."
                )
        low = min_eigenvalue(self.matrix)
        if low < -PSD_TOLERANCE:
            raise DomainError(f"H_A + shift is not nonnegative: min eigenvalue {low:.3e}.")

    @cached_property
    def unshifted(self) -> np.ndarray:
        """
        ``T + V`` without the spectral shift.
        """
        return _assemble(self.geometry.size, self.hopping, self.potential)

    @cached_property
    def matrix(self) -> np.ndarray:
        """
        ``T + V + shift``, nonnegative.
        """
        return self.unshifted + self.spectral_shift * np.eye(self.geometry.size)


def tight_binding(
    geometry: LatticeGeometry,
    tau: float,
    potential: np.ndarray | Mapping[int, float] | None = None,
    *,
    shift: float | None = None,
    hopping_range: int = 1,
    decay_rate: float = 1.0,
) -> SystemAHamiltonian:
    """
    Tight-binding particle with hopping ``-tau`` between nearest neighbours, optionally extended to the
    exponentially decaying amplitudes ``-tau e^{-a (d - 1)}`` up to ``hopping_range``.

    >>> h = tight_binding(LatticeGeometry.chain(2), 1.0, shift=2.0)
    >>> h.matrix.real.tolist()
    [[2.0, -1.0], [-1.0, 2.0]]

    The automatic shift lifts the spectrum to start at zero:

    >>> h = tight_binding(LatticeGeometry.chain(2), 1.0)
    >>> h.spectral_shift
    1.0

    :param geometry: lattice.
    :param tau: nearest-neighbour hopping strength, ``tau >= 0``.
    :param potential: bounded on-site potential, as an array or a sparse ``{site: V}`` table.
    :param shift: explicit spectral shift; ``None`` adds ``-min eigenvalue`` when the spectrum is negative.
    :param hopping_range: largest bond length carrying hopping.
    :param decay_rate: the ``a`` of the locality bound.
    :raises DomainError: negative ``tau`` or a shift that leaves the operator indefinite.
    """
    if tau < 0:
        raise DomainError(f"tau must be nonnegative, got {tau}.")
    if hopping_range < 1:
        raise DomainError(f"hopping_range must be >= 1, got {hopping_range}.")
    size = geometry.size
    v = np.zeros(size)
    if isinstance(potential, Mapping):
        for site, value in potential.items():
            v[int(site)] = float(value)
    elif potential is not None:
        v = np.asarray(potential, dtype=float)
    dist = geometry.distance_matrix
    hopping: dict[tuple[int, int], complex] = {}
    if tau > 0:
        for x, y in zip(*np.nonzero((dist >= 1) & (dist <= hopping_range))):
            hopping[(int(x), int(y))] = complex(-tau * np.exp(-decay_rate * (dist[x, y] - 1.0)))
    shift_value = shift
    if shift_value is None:
        shift_value = _auto_shift(min_eigenvalue(_assemble(size, hopping, v)))
        logger.debug("H_A spectral shift %.6g", shift_value)
    return SystemAHamiltonian(
        geometry, hopping, v, float(shift_value), tau * np.exp(decay_rate), decay_rate, tau
    )


@final
@dataclass(frozen=True, eq=False)
class SystemBSpec:
    """
    Finite-level system B with a Hermitian Hamiltonian, stored with its nonnegativity shift.

    >>> SystemBSpec.qubit(1.0).matrix.real.tolist()
    [[0.0, 0.0], [0.0, 1.0]]

    >>> SystemBSpec.from_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: H_B must be Hermitian (residual 1).
    """

    dim: int
    hamiltonian: np.ndarray
    spectral_shift: float

    def __post_init__(self):
        if self.dim < 1 or self.hamiltonian.shape != (self.dim, self.dim):
            raise DomainError(f"H_B must be {self.dim}x{self.dim}, got {self.hamiltonian.shape}.")
        res = hermiticity_residual(self.hamiltonian)
        if res > 1e-12:
            raise DomainError(f"H_B must be Hermitian (residual {res:.3g}).")
        if min_eigenvalue(self.matrix) < -PSD_TOLERANCE:
            raise DomainError("H_B + shift is not nonnegative.")

    @cached_property
    def matrix(self) -> np.ndarray:
        return self.hamiltonian.astype(complex) + self.spectral_shift * np.eye(self.dim)

    # region factories
    @classmethod
    def from_matrix(cls, hamiltonian: np.ndarray, shift: float | None = None) -> SystemBSpec:
        """
        :param hamiltonian: Hermitian ``d_B x d_B`` matrix.
        :param shift: explicit shift, automatic when ``None``.
        """
        h = np.asarray(hamiltonian, dtype=complex)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise DomainError(f"H_B must be square, got shape {h.shape}.")
        res = hermiticity_residual(h)
        if res > 1e-12:
            raise DomainError(f"H_B must be Hermitian (residual {res:.3g}).")
        if shift is None:
            shift = _auto_shift(min_eigenvalue(h))
        return cls(h.shape[0], h, float(shift))

    @classmethod
    def trivial(cls) -> SystemBSpec:
        """
        One-level system with ``H_B = 0``.
        """
        return cls(1, np.zeros((1, 1), dtype=complex), 0.0)

    @classmethod
    def qubit(cls, gap: float = 1.0) -> SystemBSpec:
        """
        Two-level system ``diag(0, gap)``.
        """
        return cls.from_matrix(np.diag([0.0, gap]))

    # endregion
