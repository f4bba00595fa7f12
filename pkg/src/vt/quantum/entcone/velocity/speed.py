#!/usr/bin/env python3
# coding=utf-8

"""
Light-cone speed ``c(mu) = sup_{zeta in closed strip S_mu} Im omega(zeta) / mu`` and its small-``mu`` limit,
the supremum of the group velocity.

Suprema are taken on a grid followed by one bounded scalar refinement around the grid argmax; the reported value is
the larger of the two, so it is always a value actually attained inside the domain (a lower approximation of the
true supremum).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.velocity.dispersion import BandComponent, DispersionLaw

logger = logging.getLogger(__name__)

DEFAULT_K_POINTS = 4096
DEFAULT_ETA_POINTS = 65
COMPLEX_STEP = 1e-20
GROUP_VELOCITY_KMAX = 1e9


@dataclass(frozen=True)
class GridSpec:
    """
    Resolution of the supremum search.

    ``k_cutoff`` overrides the default momentum window of components defined on all of R.
    """

    k_points: int = DEFAULT_K_POINTS
    eta_points: int = DEFAULT_ETA_POINTS
    k_cutoff: float | None = None
    refine: bool = True

    def __post_init__(self):
        if self.k_points < 3 or self.eta_points < 2:
            raise DomainError(
                f"grid needs at least 3 k points and 2 eta points, got {self.k_points}, {self.eta_points}."
            )


@dataclass(frozen=True)
class VelocityResult:
    """
    ``c(mu)`` together with where it was attained.

    ``attained_at`` holds one ``(k, eta)`` pair per component of the law.
    """

    law: str
    mu: float
    c_of_mu: float
    grid_resolution: tuple[int, int]
    k_cutoff: float
    attained_at: tuple[tuple[float, float], ...]
    supremum_at_infinity: bool = False


def _window(comp: BandComponent, grid: GridSpec) -> float:
    if comp.unbounded and grid.k_cutoff is not None:
        return float(grid.k_cutoff)
    return comp.k_range


def _component_sup(comp: BandComponent, mu: float, grid: GridSpec) -> tuple[float, float, float, bool]:
    """
    :return: ``(sup Im omega, k, eta, at_boundary)`` over ``|k| <= K`` and ``|eta| <= mu``.
    """
    kmax = _window(comp, grid)
    ks = np.linspace(-kmax, kmax, grid.k_points)
    etas = np.linspace(-mu, mu, grid.eta_points)
    values = comp(ks[None, :] - 1j * etas[:, None]).imag
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    best, k_best, eta_best = float(values[i, j]), float(ks[j]), float(etas[i])
    if grid.refine and best > 0:
        lo, hi = ks[max(j - 1, 0)], ks[min(j + 1, len(ks) - 1)]
        eta = eta_best
        res = minimize_scalar(
            lambda k: -float(comp(np.asarray(k - 1j * eta)).imag),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if res.success and -res.fun > best:
            best, k_best = float(-res.fun), float(res.x)
    step = ks[1] - ks[0]
    at_boundary = comp.unbounded and abs(k_best) >= kmax - step
    return best, k_best, eta_best, at_boundary


def c_mu(law: DispersionLaw, mu: float, grid: GridSpec | None = None) -> VelocityResult:
    """
    Light-cone speed for a translation-invariant kinetic energy ``omega(p)``.

    For a separable law the supremum over the polystrip splits into a sum of component suprema.

    >>> from vt.quantum.entcone.velocity.dispersion import DispersionLaws
    >>> r = c_mu(DispersionLaws.tight_binding(1.0), 0.5)
    >>> assert abs(r.c_of_mu - 2 * np.sinh(0.5) / 0.5) < 1e-6
    >>> c_mu(DispersionLaws.tight_binding(0.0), 0.5).c_of_mu
    0.0

    >>> c_mu(DispersionLaws.relativistic(1.0), 1.0)
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: mu must lie in (0, 1), got 1.0.

    :param law: dispersion law.
    :param mu: decay rate, ``0 < mu < strip_width``.
    :param grid: search resolution, default 4096 momenta by 65 imaginary parts.
    :raises DomainError: for ``mu`` outside the strip.
    :raises NumericalError: when the band function is not finite on the grid (carries the offending ``zeta``).
    """
    grid = grid or GridSpec()
    a = law.strip_width
    if not 0 < mu < a:
        raise DomainError(f"mu must lie in (0, {a:g}), got {mu}.")
    total = 0.0
    points = []
    at_infinity = False
    for comp in law.components:
        sup, k, eta, edge = _component_sup(comp, mu, grid)
        total += sup
        points.append((k, eta))
        at_infinity |= edge
    c = max(total / mu, 0.0)
    if at_infinity:
        logger.debug("c(mu=%g) of %s attained at the k window edge", mu, law.label)
    return VelocityResult(
        law.label,
        mu,
        c,
        (grid.k_points, grid.eta_points),
        max(_window(comp, grid) for comp in law.components),
        tuple(points),
        at_infinity,
    )


def _derivative_sup(comp: BandComponent, kmax: float, k_points: int) -> tuple[float, bool]:
    def speed(k: np.ndarray) -> np.ndarray:
        # complex-step derivative; omega is real on the real axis
        return np.abs(comp(k + 1j * COMPLEX_STEP).imag / COMPLEX_STEP)

    ks = np.linspace(-kmax, kmax, k_points)
    values = speed(ks)
    j = int(np.argmax(values))
    best = float(values[j])
    lo, hi = ks[max(j - 1, 0)], ks[min(j + 1, len(ks) - 1)]
    res = minimize_scalar(
        lambda k: -float(speed(np.asarray(k))), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
    )
    if res.success:
        best = max(best, float(-res.fun))
    return best, j in (0, len(ks) - 1)


def group_velocity_sup(law: DispersionLaw, grid: GridSpec | None = None) -> float:
    """
    ``sup_k |grad omega(k)|``, the ``mu -> 0`` limit of the light-cone speed.

    Components defined on all of R are searched on geometrically growing windows while the supremum keeps
    sitting on the window edge, so suprema approached as ``|k| -> infinity`` are resolved to the stated accuracy.

    >>> from vt.quantum.entcone.velocity.dispersion import DispersionLaws
    >>> assert abs(group_velocity_sup(DispersionLaws.tight_binding(1.0)) - 2.0) < 1e-9
    >>> assert abs(group_velocity_sup(DispersionLaws.relativistic(2.0)) - 1.0) < 1e-6
    >>> assert abs(group_velocity_sup(DispersionLaws.custom(lambda z: z * z / 2, np.inf, k_cutoff=4.0)) - 4.0) < 1e-9

    :return: the Euclidean norm of the component suprema.
    """
    grid = grid or GridSpec()
    sups = []
    for comp in law.components:
        kmax = _window(comp, grid)
        sup, edge = _derivative_sup(comp, kmax, grid.k_points)
        while comp.unbounded and edge and kmax < GROUP_VELOCITY_KMAX:
            kmax *= 10.0
            wider, edge = _derivative_sup(comp, kmax, grid.k_points)
            gain, sup = wider - sup, max(sup, wider)
            if gain <= 1e-9 * max(sup, 1.0):
                break
        if comp.unbounded and edge and kmax >= GROUP_VELOCITY_KMAX:
            logger.warning("group velocity of %s grows without bound; reporting the value at |k|=%g", comp.name, kmax)
        sups.append(sup)
    return float(np.linalg.norm(sups))


def physical_velocity(tau_over_hbar: float, spacing: float) -> float:
    """
    Lattice light-cone speed in physical units, ``2 * spacing * tau / hbar``.

    >>> physical_velocity(500.0, 500.0)
    500000.0
    >>> physical_velocity(1.0, 1.0)
    2.0

    :param tau_over_hbar: hopping rate in 1/s.
    :param spacing: lattice spacing, e.g. in nm.
    :return: speed in spacing units per second.
    """
    if tau_over_hbar < 0 or spacing < 0:
        raise DomainError(f"rate and spacing must be nonnegative, got {tau_over_hbar}, {spacing}.")
    return 2.0 * spacing * tau_over_hbar


def cone_radius(velocity: float, duration: float) -> float:
    """
    Distance covered by the light cone in ``duration``.

    >>> round(cone_radius(physical_velocity(500.0, 500.0), 6e-3), 6)
    3000.0
    """
    if velocity < 0 or duration < 0:
        raise DomainError(f"velocity and duration must be nonnegative, got {velocity}, {duration}.")
    return velocity * duration
