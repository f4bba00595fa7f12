#!/usr/bin/env python3
# coding=utf-8

"""
Interaction operators ``I`` localized in a region ``Y``: ``I = (chi_Y (x) 1) I (chi_Y (x) 1)``.

Every form is built directly inside the Y-block, so entries outside the block are exact zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import final

import numpy as np

from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.lattice import Region, indicator_ab
from vt.quantum.entcone.linalg import ab_indices, hermiticity_residual, operator_norm

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class CouplingForm(StrEnum):
    DENSITY = "density"
    HOPPING = "hopping"
    RANDOM = "random"


@final
@dataclass(frozen=True, eq=False)
class CouplingOperator:
    """
    Hermitian interaction supported in ``support`` on the space ``l^2(Lambda) (x) C^{d_B}``.
    """

    support: Region
    matrix: np.ndarray
    strength: float
    d_b: int
    form: CouplingForm

    def __post_init__(self):
        n = self.support.parent.size * self.d_b
        if self.matrix.shape != (n, n):
            raise DomainError(f"coupling must be {n}x{n}, got {self.matrix.shape}.")
        res = hermiticity_residual(self.matrix)
        if res > 1e-12:
            raise DomainError(f"coupling must be Hermitian (residual {res:.3g}).")
        if self.locality_residual != 0.0:
            raise DomainError(
                f"coupling has weight {self.locality_residual:.3g} outside its support {self.support.label}."
            )

    @property
    def locality_residual(self) -> float:
        """
        ``max |M - (chi_Y (x) 1) M (chi_Y (x) 1)|``; zero for every operator built by ``Couplings``.
        """
        p = indicator_ab(self.support, self.d_b)
        return float(np.max(np.abs(self.matrix - p @ self.matrix @ p), initial=0.0))


def _embed(support: Region, d_b: int, inner: np.ndarray) -> np.ndarray:
    n = support.parent.size * d_b
    m = np.zeros((n, n), dtype=complex)
    idx = ab_indices(support.indices, d_b)
    m[np.ix_(idx, idx)] = inner
    return m


@final
class Couplings:
    """
    A factory-like class for ``CouplingOperator``.
    """

    @staticmethod
    def density(support: Region, b_op: np.ndarray, strength: float) -> CouplingOperator:
        """
        ``g sum_{x in Y} |x><x| (x) B_op``.

        >>> from vt.quantum.entcone.lattice import LatticeGeometry
        >>> y = LatticeGeometry.chain(3).region([1])
        >>> c = Couplings.density(y, SIGMA_X, 0.5)
        >>> c.matrix[2:4, 2:4].real.tolist()
        [[0.0, 0.5], [0.5, 0.0]]
        >>> c.locality_residual
        0.0

        :param support: region ``Y``.
        :param b_op: Hermitian operator on B.
        :param strength: coupling constant ``g``.
        """
        b = np.asarray(b_op, dtype=complex)
        d_b = b.shape[0]
        inner = np.kron(np.eye(len(support)), b) * strength
        return CouplingOperator(support, _embed(support, d_b, inner), strength, d_b, CouplingForm.DENSITY)

    @staticmethod
    def hopping_modulation(
        support: Region, strength: float, b_op: np.ndarray | None = None, d_b: int | None = None
    ) -> CouplingOperator:
        """
        Extra hopping ``g sum |x><y| (x) B_op`` on the bonds with both ends in ``Y``.

        >>> from vt.quantum.entcone.lattice import LatticeGeometry
        >>> y = LatticeGeometry.chain(4).region([1, 2])
        >>> c = Couplings.hopping_modulation(y, 0.25, d_b=1)
        >>> c.matrix.real[1:3, 1:3].tolist()
        [[0.0, 0.25], [0.25, 0.0]]

        :param support: region ``Y``.
        :param strength: coupling constant ``g``.
        :param b_op: operator on B multiplying each bond, identity when omitted.
        :param d_b: dimension of B, required when ``b_op`` is omitted.
        """
        if b_op is None:
            if d_b is None:
                raise DomainError("hopping_modulation needs either b_op or d_b.")
            b = np.eye(d_b, dtype=complex)
        else:
            b = np.asarray(b_op, dtype=complex)
        idx = support.indices
        dist = support.parent.distance_matrix[np.ix_(idx, idx)]
        bonds = (dist == 1.0).astype(complex)
        inner = np.kron(bonds, b) * strength
        return CouplingOperator(
            support, _embed(support, b.shape[0], inner), strength, b.shape[0], CouplingForm.HOPPING
        )

    @staticmethod
    def random_block(
        support: Region, d_b: int, strength: float, rng: np.random.Generator
    ) -> CouplingOperator:
        """
        Dense random Hermitian operator on the Y-block, scaled to operator norm ``g``.

        >>> from vt.quantum.entcone.lattice import LatticeGeometry
        >>> y = LatticeGeometry.chain(5).region([2, 3])
        >>> c = Couplings.random_block(y, 2, 0.3, np.random.default_rng(7))
        >>> assert abs(operator_norm(c.matrix) - 0.3) < 1e-12
        >>> c.locality_residual
        0.0
        """
        k = len(support) * d_b
        a = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        h = 0.5 * (a + a.conj().T)
        norm = operator_norm(h)
        inner = h * (strength / norm) if norm > 0 else h
        return CouplingOperator(support, _embed(support, d_b, inner), strength, d_b, CouplingForm.RANDOM)

    @staticmethod
    def zero(support: Region, d_b: int) -> CouplingOperator:
        """
        ``I = 0`` with a nominal support.
        """
        n = support.parent.size * d_b
        return CouplingOperator(
            support, np.zeros((n, n), dtype=complex), 0.0, d_b, CouplingForm.DENSITY
        )
