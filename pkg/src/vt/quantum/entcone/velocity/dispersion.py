#!/usr/bin/env python3
# coding=utf-8

"""
Dispersion laws ``omega(zeta)`` analytic on a strip ``|Im zeta_j| < a``, the input of the light-cone speed.

Multi-dimensional laws are separable sums of one-dimensional band components. The strip is a polystrip (each
coordinate has its own imaginary part bounded by ``a``), so every component can be handled on its own.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import final

import numpy as np

from vt.quantum.entcone.errors import DomainError, NumericalError

logger = logging.getLogger(__name__)

type BandFunction = Callable[[np.ndarray], np.ndarray]

CONTINUUM_CUTOFF = 50.0
"""
Default ``|k|`` range for laws defined on all of R.
"""


class LawKind(StrEnum):
    TIGHT_BINDING = "tight-binding-1d"
    HYPERCUBIC = "hypercubic"
    RELATIVISTIC = "relativistic"
    MULTI_PARTICLE = "multi-particle-sum"
    CUSTOM = "custom"


@final
@dataclass(frozen=True)
class BandComponent:
    """
    One-dimensional band function with its analyticity strip and momentum domain.

    ``periodic`` components live on the Brillouin zone ``[-pi, pi]``. Non-periodic components either carry an
    explicit ``k_cutoff`` (a bounded momentum domain) or, with ``k_cutoff=None``, extend over all of R.
    """

    name: str
    omega: BandFunction = field(repr=False)
    strip_width: float
    periodic: bool = False
    k_cutoff: float | None = None

    def __post_init__(self):
        if not self.strip_width > 0:
            raise DomainError(f"strip width must be positive, got {self.strip_width}.")
        if self.k_cutoff is not None and not self.k_cutoff > 0:
            raise DomainError(f"k_cutoff must be positive, got {self.k_cutoff}.")

    @property
    def unbounded(self) -> bool:
        """
        ``True`` when the momentum domain is all of R.
        """
        return not self.periodic and self.k_cutoff is None

    @property
    def k_range(self) -> float:
        """
        Half-width of the momentum window searched by default.
        """
        if self.periodic:
            return float(np.pi)
        return float(self.k_cutoff) if self.k_cutoff is not None else CONTINUUM_CUTOFF

    def __call__(self, zeta: np.ndarray) -> np.ndarray:
        values = np.asarray(self.omega(np.asarray(zeta, dtype=complex)), dtype=complex)
        bad = ~np.isfinite(values)
        if np.any(bad):
            at = complex(np.broadcast_to(zeta, values.shape)[bad].flat[0])
            raise NumericalError(f"band function {self.name} is not finite at zeta={at}.", at=at)
        return values


@final
@dataclass(frozen=True)
class DispersionLaw:
    """
    Separable dispersion law ``omega(zeta) = sum_j omega_j(zeta_j)``.

    >>> law = DispersionLaws.tight_binding(1.0)
    >>> law.kind, law.dimension
    (<LawKind.TIGHT_BINDING: 'tight-binding-1d'>, 1)
    >>> assert abs(law.evaluate(np.pi / 2) - 2.0) < 1e-12
    """

    kind: LawKind
    components: tuple[BandComponent, ...]
    params: Mapping[str, float | tuple[float, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.components:
            raise DomainError("a dispersion law needs at least one component.")

    @property
    def dimension(self) -> int:
        return len(self.components)

    @property
    def strip_width(self) -> float:
        return min(c.strip_width for c in self.components)

    @property
    def label(self) -> str:
        rendered = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.kind}({rendered})"

    def evaluate(self, zeta: complex | Sequence[complex] | np.ndarray) -> complex:
        """
        :param zeta: a point of ``C^n``; a scalar is accepted for one-dimensional laws.
        :return: ``omega(zeta)``.
        """
        z = np.atleast_1d(np.asarray(zeta, dtype=complex))
        if z.shape != (self.dimension,):
            raise DomainError(f"law of dimension {self.dimension} evaluated at a point of shape {z.shape}.")
        return complex(sum(c(z[j]) for j, c in enumerate(self.components)))


def _tight_binding_component(tau: float) -> BandComponent:
    return BandComponent(
        f"tb(tau={tau})", lambda z: 2.0 * tau * (1.0 - np.cos(z)), np.inf, periodic=True
    )


def _relativistic_component(mass: float) -> BandComponent:
    return BandComponent(f"rel(m={mass})", lambda z: np.sqrt(z * z + mass * mass), float(mass))


@final
class DispersionLaws:
    """
    A factory-like class for ``DispersionLaw``.
    """

    @staticmethod
    def tight_binding(tau: float) -> DispersionLaw:
        """
        Nearest-neighbour chain, ``omega(k) = 2 tau (1 - cos k)``; entire, so the strip is unbounded.

        :param tau: hopping strength, ``tau >= 0``.
        """
        if tau < 0:
            raise DomainError(f"tau must be nonnegative, got {tau}.")
        return DispersionLaw(LawKind.TIGHT_BINDING, (_tight_binding_component(tau),), {"tau": tau})

    @staticmethod
    def hypercubic(tau: float, n: int) -> DispersionLaw:
        """
        Nearest-neighbour hopping on Z^n, ``omega(k) = sum_j 2 tau (1 - cos k_j)``.

        >>> DispersionLaws.hypercubic(1.0, 3).dimension
        3
        """
        if tau < 0:
            raise DomainError(f"tau must be nonnegative, got {tau}.")
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}.")
        comps = tuple(_tight_binding_component(tau) for _ in range(n))
        return DispersionLaw(LawKind.HYPERCUBIC, comps, {"tau": tau, "n": n})

    @staticmethod
    def relativistic(mass: float) -> DispersionLaw:
        """
        ``omega(k) = sqrt(k^2 + m^2)``; branch points at ``+-im`` bound the strip by ``m``.

        >>> DispersionLaws.relativistic(1.0).strip_width
        1.0
        """
        if not mass > 0:
            raise DomainError(f"mass must be positive, got {mass}.")
        return DispersionLaw(LawKind.RELATIVISTIC, (_relativistic_component(mass),), {"m": mass})

    @staticmethod
    def multi_particle(masses: Sequence[float]) -> DispersionLaw:
        """
        Semi-relativistic N-particle kinetic energy ``sum_j sqrt(k_j^2 + m_j^2)`` with one coordinate per particle.

        >>> DispersionLaws.multi_particle([1.0, 2.0]).strip_width
        1.0
        """
        if not masses:
            raise DomainError("multi_particle needs at least one mass.")
        for m in masses:
            if not m > 0:
                raise DomainError(f"every mass must be positive, got {m}.")
        comps = tuple(_relativistic_component(float(m)) for m in masses)
        return DispersionLaw(LawKind.MULTI_PARTICLE, comps, {"masses": tuple(float(m) for m in masses)})

    @staticmethod
    def custom(
        omega: BandFunction,
        strip_width: float,
        *,
        k_cutoff: float | None = None,
        periodic: bool = False,
        name: str = "custom",
    ) -> DispersionLaw:
        """
        User-supplied one-dimensional band function.

        >>> law = DispersionLaws.custom(lambda z: z * z / 2, np.inf, k_cutoff=3.0)
        >>> law.components[0].k_range
        3.0

        :param omega: vectorized complex band function, real on the real axis.
        :param strip_width: half-width ``a`` of its strip of analyticity.
        :param k_cutoff: bounded momentum domain ``|k| <= K``; ``None`` means all of R.
        :param periodic: band on the Brillouin zone ``[-pi, pi]``.
        :param name: label used in tables.
        """
        comp = BandComponent(name, omega, strip_width, periodic=periodic, k_cutoff=k_cutoff)
        params: dict[str, float | tuple[float, ...]] = {"a": strip_width}
        if k_cutoff is not None:
            params["K"] = k_cutoff
        return DispersionLaw(LawKind.CUSTOM, (comp,), params)


@dataclass(frozen=True)
class StripReport:
    """
    Grid check that ``omega`` is real on the real axis and ``Im omega(k + i eta)`` stays bounded inside the strip.
    """

    law: str
    real_axis_residual: float
    sup_abs_imag: tuple[float, ...]
    eta_values: tuple[float, ...]

    @property
    def real_on_axis(self) -> bool:
        return self.real_axis_residual <= 1e-10

    @property
    def bounded(self) -> bool:
        return all(np.isfinite(v) for v in self.sup_abs_imag)


def check_strip(
    law: DispersionLaw, width: float | None = None, *, k_points: int = 1024, eta_points: int = 9
) -> StripReport:
    """
    Evaluate the analyticity condition on a grid of strips ``|Im zeta| = eta < width``.

    >>> r = check_strip(DispersionLaws.relativistic(1.0))
    >>> r.real_on_axis and r.bounded
    True

    :param law: dispersion law.
    :param width: strips checked up to this height, default ``0.95 * strip_width`` (capped at 5 for entire laws).
    :raises DomainError: if ``width`` reaches the strip boundary.
    :raises NumericalError: if the band function is not finite somewhere on the grid.
    """
    a = law.strip_width
    w = min(0.95 * a, 5.0) if width is None else width
    if not 0 < w < a:
        raise DomainError(f"check width must lie in (0, {a}), got {w}.")
    etas = np.linspace(0.0, w, eta_points)
    residual = 0.0
    sups = []
    for eta in etas:
        total = 0.0
        for comp in law.components:
            k = np.linspace(-comp.k_range, comp.k_range, k_points)
            values = comp(k + 1j * eta)
            if eta == 0.0:
                residual = max(residual, float(np.max(np.abs(values.imag))))
            total += float(np.max(np.abs(values.imag)))
        sups.append(total)
    logger.debug("strip check %s: real-axis residual %.3g", law.label, residual)
    return StripReport(law.label, residual, tuple(sups), tuple(float(e) for e in etas))
