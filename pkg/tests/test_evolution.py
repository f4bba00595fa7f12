#!/usr/bin/env python3
# coding=utf-8

import numpy as np
import pytest
from scipy.special import jv

from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.evolution import (
    DensityOperator,
    ModelCaches,
    SpectralCache,
    SpectralSource,
    duhamel_reconstruction,
    duhamel_residual_norm,
    estimate_chain_check,
    evolve,
    free_evolve,
    propagator_leakage,
    semilocalized_remainder_check,
    trace_norm_duality_check,
    weighted_uniform_bound_check,
)
from vt.quantum.entcone.harness import build_scenario_model, load_config, make_initial_state, region_of
from vt.quantum.entcone.lattice import LatticeGeometry
from vt.quantum.entcone.lightcone import SweepSample, envelope_violations, fit_envelope
from vt.quantum.entcone.model import Couplings, SystemBSpec, build_model, tight_binding


def _basis_state(model, site: int, level: int) -> DensityOperator:
    size, d_b = model.dims
    psi = np.zeros(size * d_b)
    psi[site * d_b + level] = 1.0
    return DensityOperator.from_vector(psi, model.dims)


@pytest.mark.parametrize("tau", [0.5, 1.0])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("n", [1, 2, 4])
def test_leakage_on_a_long_chain_is_a_bessel_function(tau, t, n):
    chain = LatticeGeometry.chain(61)
    cache = SpectralCache.from_matrix(tight_binding(chain, tau).matrix, SpectralSource.HA)
    leak = propagator_leakage(chain.region([30 + n]), chain.region([30]), cache, t)
    assert leak == pytest.approx(abs(jv(n, 2.0 * tau * t)), abs=1e-9)


def test_leakage_of_a_flat_band_vanishes():
    chain = LatticeGeometry.chain(6)
    cache = SpectralCache.from_matrix(tight_binding(chain, 0.0).matrix, SpectralSource.HA)
    assert propagator_leakage(chain.region([5]), chain.region([0]), cache, 3.0) == pytest.approx(0.0, abs=1e-14)


class TestEvolution:
    def test_trace_and_purity_are_preserved(self, chain_model, chain_caches):
        gamma0 = _basis_state(chain_model, 0, 1)
        gamma = evolve(gamma0, chain_caches.hab, 1.7)
        assert gamma.trace == pytest.approx(1.0, abs=1e-12)
        assert gamma.is_pure

    def test_free_evolution_needs_the_h0_cache(self, chain_model, chain_caches):
        with pytest.raises(DomainError, match="H_0 cache"):
            free_evolve(_basis_state(chain_model, 0, 0), chain_caches.hab, 1.0)

    def test_duhamel_formula_reconstructs_the_evolution(self, chain_model, chain_caches):
        gamma0 = _basis_state(chain_model, 1, 0)
        exact = evolve(gamma0, chain_caches.hab, 0.8).matrix
        rebuilt = duhamel_reconstruction(gamma0, 0.8, chain_caches)
        assert np.max(np.abs(exact - rebuilt)) < 1e-6

    def test_residual_vanishes_without_coupling(self):
        chain = LatticeGeometry.chain(6)
        model = build_model(tight_binding(chain, 1.0), SystemBSpec.qubit(), Couplings.zero(chain.span(2, 3), 2))
        caches = ModelCaches.from_model(model)
        gamma0 = _basis_state(model, 0, 0)
        for t in (0.0, 0.5, 2.0):
            assert duhamel_residual_norm(chain.span(4, 5), gamma0, t, caches) == pytest.approx(0.0, abs=1e-14)

    def test_residual_starts_at_zero(self, chain_model, chain_caches):
        x = chain_model.geometry.span(4, 5)
        assert duhamel_residual_norm(x, _basis_state(chain_model, 2, 0), 0.0, chain_caches) == 0.0
        assert duhamel_residual_norm(x, _basis_state(chain_model, 2, 0), 1.0, chain_caches) > 0.0


class TestEstimates:
    def test_uniform_bound(self, chain_model, chain_caches):
        report = weighted_uniform_bound_check(
            _basis_state(chain_model, 3, 1), np.linspace(0.0, 5.0, 11), chain_model, chain_caches
        )
        assert report.passed
        assert report.c_observed >= 1.0 - 1e-12

    @pytest.mark.parametrize("t", [0.5, 1.5])
    def test_estimate_chain(self, chain_model, chain_caches, t):
        x = chain_model.geometry.span(5, 5)
        report = estimate_chain_check(x, _basis_state(chain_model, 2, 0), t, chain_caches, s_points=11)
        assert report.passed
        assert report.residual <= report.integrated_bound * 1.05 + 1e-12

    def test_estimate_chain_needs_a_probe_outside_the_coupling(self, chain_model, chain_caches):
        with pytest.raises(DomainError, match="meets the coupling support"):
            estimate_chain_check(chain_model.geometry.span(3, 4), _basis_state(chain_model, 0, 0), 1.0, chain_caches)

    def test_semilocalized_remainder(self, chain_model, chain_caches):
        geometry = chain_model.geometry
        report = semilocalized_remainder_check(
            geometry.region([5]), geometry.region([0]), _basis_state(chain_model, 0, 0), 1.0, chain_caches
        )
        assert report.passed
        assert report.remainder > 0.0

    def test_trace_norm_duality(self, rng):
        lam = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        report = trace_norm_duality_check(lam, rng, samples=50)
        assert report.passed


@pytest.mark.slow
def test_free_chain_leakage_follows_the_cone():
    chain = LatticeGeometry.chain(64)
    cache = SpectralCache.from_matrix(tight_binding(chain, 1.0).matrix, SpectralSource.HA)
    y = chain.region([20])
    rows = []
    for d in range(6, 25):
        for t in np.linspace(0.5, 8.0, 16):
            leak = propagator_leakage(chain.region([20 + d]), y, cache, float(t))
            rows.append(SweepSample(float(d), float(t), 0.0, leak, row=len(rows)))
    fit = fit_envelope(rows, "leakage", tau=1.0)
    assert fit.mu_fit > 0
    assert 1.8 <= fit.c_fit <= 2.3
    assert envelope_violations(rows, fit) == []


@pytest.mark.slow
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_duhamel_formula_on_the_reference_chain(scenarios_dir, t):
    config = load_config(scenarios_dir / "reference.yaml")
    model = build_scenario_model(config)
    caches = ModelCaches.from_model(model)
    gamma0, _ = make_initial_state(config.initial_state, model, region_of(model.geometry, config.regions.q))
    exact = evolve(gamma0, caches.hab, t).matrix
    assert np.max(np.abs(exact - duhamel_reconstruction(gamma0, t, caches))) < 1e-6
