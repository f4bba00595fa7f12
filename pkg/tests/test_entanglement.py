#!/usr/bin/env python3
# coding=utf-8

import numpy as np
import pytest

from vt.quantum.entcone.entanglement import (
    SeparabilityStatus,
    is_ppt,
    local_entanglement,
    localize,
    log_negativity,
    negativity,
    schmidt_number_witness,
    schmidt_rank,
    schmidt_spectrum,
    sep_distance_bounds,
    separability_lower_bound,
    validate_witness_inequality,
)
from vt.quantum.entcone.entanglement import separable
from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.evolution import DensityOperator
from vt.quantum.entcone.lattice import LatticeGeometry, indicator_ab

PHI_PLUS = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)


def werner(p: float) -> DensityOperator:
    return DensityOperator(p * np.outer(PHI_PLUS, PHI_PLUS) + (1.0 - p) * np.eye(4) / 4.0, (2, 2))


class TestWerner:
    @pytest.mark.parametrize("p", [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0])
    def test_negativity(self, p):
        assert negativity(werner(p)) == pytest.approx(max(0.0, (3.0 * p - 1.0) / 4.0), abs=1e-12)

    @pytest.mark.parametrize("p, ppt", [(0.2, True), (0.3, True), (0.4, False), (0.9, False)])
    def test_ppt_threshold(self, p, ppt):
        assert is_ppt(werner(p)) is ppt

    @pytest.mark.parametrize("p, bound", [(0.2, 1), (0.5, 2), (1.0, 2)])
    def test_schmidt_number_witness(self, p, bound):
        report = schmidt_number_witness(werner(p))
        assert report.witness_lower_bound == bound
        assert report.certified

    def test_log_negativity_of_a_maximally_entangled_qutrit_pair(self):
        psi = np.zeros(9)
        psi[[0, 4, 8]] = 1.0
        rho = DensityOperator.from_vector(psi, (3, 3))
        assert log_negativity(rho) == pytest.approx(np.log2(3.0))
        assert schmidt_number_witness(rho).witness_lower_bound == 3

    def test_separability_lower_bound(self):
        assert separability_lower_bound(werner(0.8)) == pytest.approx(0.35 / 2.0)
        assert separability_lower_bound(werner(0.2)) == pytest.approx(0.0, abs=1e-12)


class TestSeparabilityBounds:
    def test_bell_state_is_certified_entangled(self):
        verdict = sep_distance_bounds(werner(1.0), 10, kappa=1e-3)
        assert verdict.status is SeparabilityStatus.ENTANGLED
        assert verdict.lower_bound == pytest.approx(0.25)
        assert verdict.lower_bound <= verdict.upper_bound

    def test_product_mixture_is_certified_separable(self):
        rho = DensityOperator(np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex), (2, 2))
        verdict = sep_distance_bounds(rho, 10, kappa=1e-3)
        assert verdict.status is SeparabilityStatus.SEPARABLE
        assert verdict.upper_bound < 1e-8

    def test_ppt_werner_state_is_never_called_entangled(self):
        verdict = sep_distance_bounds(werner(0.2), 20, kappa=1e-3, rng=np.random.default_rng(3))
        assert verdict.lower_bound == pytest.approx(0.0, abs=1e-12)
        assert verdict.status is not SeparabilityStatus.ENTANGLED

    def test_bounds_scale_with_the_weight(self):
        chain = LatticeGeometry.chain(3)
        psi = np.zeros(6)
        psi[[0, 3]] = 1.0
        loc = localize(DensityOperator.from_vector(psi, (3, 2)), chain.region([0, 1]))
        full = sep_distance_bounds(loc, 10)
        assert full.weight == pytest.approx(1.0)
        assert full.lower_bound == pytest.approx(0.25)

    def test_zero_weight_is_trivially_separable(self):
        chain = LatticeGeometry.chain(3)
        psi = np.zeros(6)
        psi[0] = 1.0
        loc = localize(DensityOperator.from_vector(psi, (3, 2)), chain.region([2]))
        verdict = sep_distance_bounds(loc, 10)
        assert (verdict.lower_bound, verdict.upper_bound) == (0.0, 0.0)
        assert verdict.status is SeparabilityStatus.SEPARABLE

    def test_search_is_reproducible(self):
        first = sep_distance_bounds(werner(0.5), 5, rng=np.random.default_rng(9))
        second = sep_distance_bounds(werner(0.5), 5, rng=np.random.default_rng(9))
        assert first.upper_bound == second.upper_bound

    def test_stalled_search_is_not_converged(self, monkeypatch):
        def no_gain(residual, dims, rng):
            return 0.0, np.eye(dims[0])[0], np.eye(dims[1])[0]

        monkeypatch.setattr(separable, "_best_product", no_gain)
        verdict = sep_distance_bounds(werner(1.0), 10, kappa=1e-3)
        assert not verdict.converged
        assert verdict.iterations == 1
        assert any(note.startswith("search stalled") for note in verdict.notes)
        assert verdict.lower_bound <= verdict.upper_bound

    @pytest.mark.parametrize("dims", [(2, 2), (3, 2)])
    def test_random_states_keep_the_bounds_ordered(self, dims):
        rng = np.random.default_rng(17)
        n = dims[0] * dims[1]
        for _ in range(10):
            g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            rho = DensityOperator.from_matrix(g @ g.conj().T / np.trace(g @ g.conj().T).real, dims)
            verdict = sep_distance_bounds(rho, 5, rng=rng)
            assert verdict.lower_bound <= verdict.upper_bound + 1e-9


class TestLocalization:
    def test_weights_of_a_partition_add_up(self):
        chain = LatticeGeometry.chain(5)
        rng = np.random.default_rng(2)
        psi = rng.normal(size=10) + 1j * rng.normal(size=10)
        gamma = DensityOperator.from_vector(psi, (5, 2))
        x = chain.region([0, 3])
        assert localize(gamma, x).weight + localize(gamma, x.complement()).weight == pytest.approx(1.0)

    def test_local_entanglement(self):
        chain = LatticeGeometry.chain(3)
        psi = np.zeros(6)
        psi[[0, 3]] = 1.0
        gamma = DensityOperator.from_vector(psi, (3, 2))
        assert local_entanglement(gamma, chain.region([0, 1])) == pytest.approx(0.5)
        assert local_entanglement(gamma, chain.region([0])) == pytest.approx(0.0, abs=1e-12)
        assert local_entanglement(gamma, chain.region([2])) == 0.0

    def test_normalizing_an_empty_truncation_fails(self):
        chain = LatticeGeometry.chain(3)
        gamma = DensityOperator.from_vector(np.eye(6)[0], (3, 2))
        with pytest.raises(DomainError, match="carries no weight"):
            localize(gamma, chain.region([2])).normalized()

    def test_localizing_never_raises_the_schmidt_rank(self):
        chain = LatticeGeometry.chain(4)
        rng = np.random.default_rng(5)
        for _ in range(200):
            rank = int(rng.integers(1, 4))
            psi = sum(np.kron(rng.normal(size=4), rng.normal(size=3)) for _ in range(rank))
            members = [i for i in range(4) if rng.random() < 0.5] or [int(rng.integers(4))]
            localized = indicator_ab(chain.region(members), 3) @ psi
            assert schmidt_rank(localized, (4, 3)) <= schmidt_rank(psi, (4, 3))


def test_schmidt_spectrum_reports_the_gap():
    psi = np.kron([1.0, 0.0], [1.0, 0.0]) + 1e-3 * np.kron([0.0, 1.0], [0.0, 1.0])
    spectrum = schmidt_spectrum(psi, (2, 2))
    assert spectrum.rank == 2
    assert spectrum.gap == pytest.approx((1e-3, 0.0))
    assert schmidt_rank(psi, (2, 2), tol=1e-2) == 1


def test_witness_inequality_validates():
    assert validate_witness_inequality().passed
    assert validate_witness_inequality(2, 3, samples=50, seed=1).passed
