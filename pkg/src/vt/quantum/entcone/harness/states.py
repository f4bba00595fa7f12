#!/usr/bin/env python3
# coding=utf-8

"""
Canonical initial states and the certificate each constructor issues.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from vt.quantum.entcone.entanglement import is_ppt, localize, negativity, schmidt_rank
from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.evolution import DensityOperator
from vt.quantum.entcone.harness.config import BellInQ, GibbsLike, InitialStateSpec, MixtureRecipe, ProductRecipe
from vt.quantum.entcone.lattice import Region, indicator_ab
from vt.quantum.entcone.linalg import dagger, hermitian_part, trace_norm
from vt.quantum.entcone.model import BipartiteModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StateCertificate:
    """
    What a constructor guarantees about ``Gamma_0``.

    ``support_residual`` is ``||chi~_Q(Gamma_0) - Gamma_0||_1`` (``None`` without ``Q``); ``h0_norm`` is
    ``||H_0 Gamma_0||_1``, finite here but recorded as the scale of the residual bound.
    """

    recipe: str
    schmidt_rank: int | None
    support_residual: float | None
    negativity: float
    ppt: bool
    separable_by_construction: bool
    h0_norm: float

    def as_dict(self) -> dict[str, object]:
        return {
            "recipe": self.recipe,
            "schmidt_rank": self.schmidt_rank,
            "support_residual": self.support_residual,
            "negativity": self.negativity,
            "ppt": self.ppt,
            "separable_by_construction": self.separable_by_construction,
            "h0_norm": self.h0_norm,
        }


def _basis(model: BipartiteModel, site: int, level: int) -> np.ndarray:
    size, d_b = model.dims
    if not 0 <= site < size or not 0 <= level < d_b:
        raise DomainError(f"basis state |{site}, {level}> is outside a {size} x {d_b} system.")
    v = np.zeros(size * d_b, dtype=complex)
    v[site * d_b + level] = 1.0
    return v


def _require_q(q: Region | None, recipe: str) -> Region:
    if q is None:
        raise DomainError(f"recipe {recipe} needs the region Q.")
    return q


def make_initial_state(
    recipe: InitialStateSpec, model: BipartiteModel, q: Region | None = None
) -> tuple[DensityOperator, StateCertificate]:
    """
    Build ``Gamma_0`` from a recipe.

    * ``bell-in-q``: ``(|x1, l1> + |x2, l2>) / sqrt 2`` with ``x1, x2`` in ``Q``; pure, Schmidt rank 2, supported in
      ``Q``.
    * ``product``: ``|x, l><x, l|``.
    * ``mixture``: convex combination of products, weights renormalized to one.
    * ``gibbs-like``: ``chi~_Q(e^{-beta H_0})`` normalized; a product of ``chi_Q e^{-beta H_A} chi_Q`` and
      ``e^{-beta H_B}``, so separable and supported in ``Q``.

    :param recipe: one of the recipe models of the scenario file.
    :param model: the bipartite model fixing ``(L, d_B)`` and ``H_0``.
    :param q: the region ``Q``; required by the ``Q``-supported recipes.
    :raises DomainError: sites outside ``Q`` for ``Q``-supported recipes, or basis states outside the system.
    """
    dims = model.dims
    rank: int | None = None
    match recipe:
        case BellInQ(sites=(x1, x2), levels=(l1, l2)):
            region = _require_q(q, recipe.recipe)
            if x1 not in region or x2 not in region:
                raise DomainError(f"bell-in-q sites ({x1}, {x2}) must lie in Q={region.label}.")
            if x1 == x2 or l1 == l2:
                raise DomainError("bell-in-q needs two distinct sites and two distinct levels.")
            psi = (_basis(model, x1, l1) + _basis(model, x2, l2)) / np.sqrt(2.0)
            gamma = DensityOperator.from_vector(psi, dims)
            rank = schmidt_rank(psi, dims)
            separable = False
        case ProductRecipe(site=site, level=level):
            gamma = DensityOperator.from_vector(_basis(model, site, level), dims)
            rank = 1
            separable = True
        case MixtureRecipe(components=components):
            total = sum(c.weight for c in components)
            m = np.zeros((model.dimension, model.dimension), dtype=complex)
            for c in components:
                v = _basis(model, c.site, c.level)
                m += (c.weight / total) * np.outer(v, v.conj())
            gamma = DensityOperator(m, dims)
            separable = True
        case GibbsLike(beta=beta):
            region = _require_q(q, recipe.recipe)
            p = indicator_ab(region, dims[1])
            w, v = la.eigh(model.h0)
            m = hermitian_part(p @ ((v * np.exp(-beta * w)) @ dagger(v)) @ p)
            gamma = DensityOperator(m / np.trace(m).real, dims)
            separable = True
        case _:
            raise DomainError(f"unknown initial-state recipe {recipe!r}.")
    residual = None if q is None else trace_norm(localize(gamma, q).operator - gamma.matrix)
    if gamma.is_pure and rank is None:
        rank = schmidt_rank(gamma.vector(), dims)
    certificate = StateCertificate(
        recipe=recipe.recipe,
        schmidt_rank=rank,
        support_residual=residual,
        negativity=negativity(gamma),
        ppt=is_ppt(gamma),
        separable_by_construction=separable,
        h0_norm=trace_norm(model.h0 @ gamma.matrix),
    )
    logger.debug("initial state %s: %s", recipe.recipe, certificate)
    return gamma, certificate
