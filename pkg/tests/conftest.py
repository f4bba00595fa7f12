#!/usr/bin/env python3
# coding=utf-8

from pathlib import Path

import numpy as np
import pytest

from vt.quantum.entcone.evolution import ModelCaches
from vt.quantum.entcone.harness import ScenarioConfig, parse_config
from vt.quantum.entcone.lattice import LatticeGeometry
from vt.quantum.entcone.model import BipartiteModel, Couplings, SIGMA_X, SystemBSpec, build_model, tight_binding

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def _small_document(**changes) -> dict:
    """
    Ten-site chain with a qubit coupled on 4..5 and a Bell pair on 0..1; small enough for every test to sweep.
    """
    doc = {
        "name": "small",
        "lattice": {"shape": [10]},
        "coupling": {"strength": 0.5, "support": "4..5"},
        "regions": {"q": "0..1", "probes": ["7..8", "8..9", "0..2"]},
        "initial_state": {"recipe": "bell-in-q", "sites": [0, 1]},
        "times": {"start": 0.0, "stop": 1.0, "points": 5},
        "mu": [0.5],
        "separable_iterations": 5,
    }
    doc.update(changes)
    return doc


@pytest.fixture
def small_config(tmp_path) -> ScenarioConfig:
    return parse_config(_small_document(output_dir=str(tmp_path / "out")))


@pytest.fixture
def product_config(tmp_path) -> ScenarioConfig:
    """
    No Q and a product state: only the sweep and the envelope fits run.
    """
    return parse_config(
        _small_document(
            regions={"probes": ["7..8", "8..9"]},
            initial_state={"recipe": "product", "site": 4, "level": 0},
            output_dir=str(tmp_path / "out"),
        )
    )


@pytest.fixture
def chain_model() -> BipartiteModel:
    chain = LatticeGeometry.chain(6)
    return build_model(
        tight_binding(chain, 1.0), SystemBSpec.qubit(), Couplings.density(chain.span(2, 3), SIGMA_X, 0.4)
    )


@pytest.fixture
def chain_caches(chain_model) -> ModelCaches:
    return ModelCaches.from_model(chain_model)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(11)


@pytest.fixture
def make_document():
    return _small_document


@pytest.fixture
def scenarios_dir() -> Path:
    return SCENARIOS
