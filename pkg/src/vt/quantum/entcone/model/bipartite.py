#!/usr/bin/env python3
# coding=utf-8

"""
The coupled system ``H_AB = H_A (x) 1 + 1 (x) H_B + I = H_0 + I`` and numerical checks of its structural conditions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import final

import numpy as np

from vt.quantum.entcone.errors import ConditionsViolatedError, DomainError, LemmaCheckError
from vt.quantum.entcone.lattice import LatticeGeometry
from vt.quantum.entcone.linalg import (
    hermiticity_residual,
    min_eigenvalue,
    operator_norm,
    psd_sqrt_inverse,
)
from vt.quantum.entcone.model.coupling import CouplingOperator
from vt.quantum.entcone.model.hamiltonians import SystemAHamiltonian, SystemBSpec

logger = logging.getLogger(__name__)

LOWER_BOUND_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ConditionReport:
    """
    Build report of a ``BipartiteModel``: the relative bounds of ``I`` and the bookkeeping around them.

    ``alpha4`` is ``||(H_0+1)^{-1/2} I (H_0+1)^{-1/2}||`` and ``alpha5`` is ``||I (H_0+1)^{-1}||``, the latter
    being the ``||IJ||`` entering the residual estimate.
    """

    alpha4: float
    alpha5: float
    locality_residual: float
    hermiticity_residual: float
    shift_a: float
    shift_b: float
    overridden: bool = False

    @property
    def satisfied(self) -> bool:
        return self.alpha4 < 1.0 and self.alpha5 < 1.0

    def as_dict(self) -> dict[str, float | bool]:
        return {
            "alpha4": self.alpha4,
            "alpha5": self.alpha5,
            "locality_residual": self.locality_residual,
            "hermiticity_residual": self.hermiticity_residual,
            "shift_a": self.shift_a,
            "shift_b": self.shift_b,
            "overridden": self.overridden,
        }


@final
@dataclass(frozen=True, eq=False)
class BipartiteModel:
    """
    Assembled dense Hamiltonians of the bipartite system with the tensor ordering of ``np.kron(A, B)``.
    """

    a: SystemAHamiltonian
    b: SystemBSpec
    coupling: CouplingOperator
    h0: np.ndarray
    hab: np.ndarray
    report: ConditionReport

    @property
    def geometry(self) -> LatticeGeometry:
        return self.a.geometry

    @property
    def dims(self) -> tuple[int, int]:
        """
        :return: ``(L, d_B)``.
        """
        return self.a.geometry.size, self.b.dim

    @property
    def dimension(self) -> int:
        return self.h0.shape[0]

    @cached_property
    def j(self) -> np.ndarray:
        """
        ``J = (H_0 + 1)^{-1}``.
        """
        return np.linalg.inv(self.h0 + np.eye(self.dimension))

    @cached_property
    def j_ab(self) -> np.ndarray:
        """
        ``J_AB = (H_AB + 1)^{-1}``.
        """
        return np.linalg.inv(self.hab + np.eye(self.dimension))


def _alphas(h0: np.ndarray, m: np.ndarray) -> tuple[float, float]:
    n = h0.shape[0]
    r = psd_sqrt_inverse(h0)
    alpha4 = operator_norm(r @ m @ r)
    alpha5 = operator_norm(m @ np.linalg.inv(h0 + np.eye(n)))
    return alpha4, alpha5


def build_model(
    a: SystemAHamiltonian,
    b: SystemBSpec,
    coupling: CouplingOperator,
    *,
    allow_violations: bool = False,
) -> BipartiteModel:
    """
    Assemble ``H_0 = H_A (x) 1 + 1 (x) H_B`` and ``H_AB = H_0 + I``.

    >>> from vt.quantum.entcone.lattice import LatticeGeometry
    >>> from vt.quantum.entcone.model.coupling import Couplings
    >>> from vt.quantum.entcone.model.hamiltonians import tight_binding
    >>> chain = LatticeGeometry.chain(2)
    >>> m = build_model(tight_binding(chain, 1.0, shift=2.0), SystemBSpec.trivial(),
    ...                 Couplings.zero(chain.full(), 1))
    >>> m.hab.real.tolist()
    [[2.0, -1.0], [-1.0, 2.0]]
    >>> assert np.array_equal(m.hab, m.h0)

    A coupling too strong for the relative bounds is refused:

    >>> strong = Couplings.density(chain.region([0]), np.array([[-10.0]]), 1.0)
    >>> build_model(tight_binding(chain, 1.0, shift=2.0), SystemBSpec.trivial(), strong)
    Traceback (most recent call last):
    vt.quantum.entcone.errors.ConditionsViolatedError: conditions-violated: alpha4=... alpha5=... (both must be < 1)

    :param a: lattice particle.
    :param b: finite-level system.
    :param coupling: interaction localized in ``Y``.
    :param allow_violations: build even when ``alpha4 >= 1`` or ``alpha5 >= 1``; the report records the override.
    :raises DomainError: on inconsistent dimensions.
    :raises ConditionsViolatedError: when a relative bound fails and ``allow_violations`` is not set.
    """
    size = a.geometry.size
    if coupling.support.parent != a.geometry:
        raise DomainError("coupling support lives on a different lattice than H_A.")
    if coupling.d_b != b.dim:
        raise DomainError(f"coupling acts on d_B={coupling.d_b}, system B has d_B={b.dim}.")
    h0 = np.kron(a.matrix, np.eye(b.dim)) + np.kron(np.eye(size), b.matrix)
    hab = h0 + coupling.matrix
    alpha4, alpha5 = _alphas(h0, coupling.matrix)
    report = ConditionReport(
        alpha4=alpha4,
        alpha5=alpha5,
        locality_residual=coupling.locality_residual,
        hermiticity_residual=hermiticity_residual(hab),
        shift_a=a.spectral_shift,
        shift_b=b.spectral_shift,
        overridden=allow_violations and not (alpha4 < 1.0 and alpha5 < 1.0),
    )
    logger.debug("built model L=%d d_B=%d alpha4=%.6g alpha5=%.6g", size, b.dim, alpha4, alpha5)
    if not report.satisfied:
        if not allow_violations:
            raise ConditionsViolatedError(alpha4, alpha5)
        logger.warning(
            "building with alpha4=%.6g alpha5=%.6g; the light-cone bounds give no guarantee", alpha4, alpha5
        )
    return BipartiteModel(a, b, coupling, h0, hab, report)


def check_condition_4_5(model: BipartiteModel) -> tuple[float, float]:
    """
    Recompute the relative bounds ``(alpha4, alpha5)`` of the coupling from the assembled matrices.

    >>> from vt.quantum.entcone.lattice import LatticeGeometry
    >>> from vt.quantum.entcone.model.coupling import Couplings
    >>> from vt.quantum.entcone.model.hamiltonians import tight_binding
    >>> chain = LatticeGeometry.chain(4)
    >>> m = build_model(tight_binding(chain, 1.0), SystemBSpec.qubit(), Couplings.zero(chain.full(), 2))
    >>> check_condition_4_5(m)
    (0.0, 0.0)
    """
    return _alphas(model.h0, model.hab - model.h0)


@dataclass(frozen=True)
class LowerBoundReport:
    """
    Smallest eigenvalue of ``H_AB + 1 - (1 - alpha4)(H_0 + 1)``.
    """

    alpha4: float
    min_eigenvalue: float
    tolerance: float = LOWER_BOUND_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.min_eigenvalue >= -self.tolerance


def lower_bound_check(model: BipartiteModel) -> LowerBoundReport:
    """
    Check that ``H_AB + 1 >= (1 - alpha4)(H_0 + 1)`` holds as an operator inequality.

    The residual equals ``I + alpha4 (H_0 + 1)``; with ``I = 0`` it vanishes identically:

    >>> from vt.quantum.entcone.lattice import LatticeGeometry
    >>> from vt.quantum.entcone.model.coupling import Couplings
    >>> from vt.quantum.entcone.model.hamiltonians import tight_binding
    >>> chain = LatticeGeometry.chain(3)
    >>> m = build_model(tight_binding(chain, 1.0), SystemBSpec.trivial(), Couplings.zero(chain.full(), 1))
    >>> r = lower_bound_check(m)
    >>> assert r.passed and abs(r.min_eigenvalue) < 1e-12

    :raises DomainError: if ``alpha4 >= 1``, where the inequality carries no content.
    :raises LemmaCheckError: with the offending eigenvalue when the inequality fails.
    """
    alpha4, _ = check_condition_4_5(model)
    if alpha4 >= 1.0:
        raise DomainError(f"lower bound check needs alpha4 < 1, got {alpha4:.6g}.")
    eye = np.eye(model.dimension)
    residual = model.hab + eye - (1.0 - alpha4) * (model.h0 + eye)
    report = LowerBoundReport(alpha4, min_eigenvalue(residual))
    if not report.passed:
        raise LemmaCheckError(
            "H_AB + 1 - (1 - alpha4)(H_0 + 1) is not nonnegative",
            {"min_eigenvalue": report.min_eigenvalue, "alpha4": alpha4},
        )
    return report
