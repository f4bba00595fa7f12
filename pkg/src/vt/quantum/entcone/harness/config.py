#!/usr/bin/env python3
# coding=utf-8

"""
Scenario documents: a YAML file validated into ``ScenarioConfig``.

A minimal document only names what differs from the defaults:

>>> cfg = parse_config({"name": "tiny", "lattice": {"shape": [8]}, "coupling": {"support": "3..4"},
...                     "regions": {"q": "0..1", "probes": ["6", "7"]},
...                     "initial_state": {"recipe": "bell-in-q", "sites": [0, 1]}})
>>> cfg.hamiltonian.tau, str(cfg.system_b.kind), cfg.times.values()[:3]
(1.0, 'qubit', [0.0, 0.25, 0.5])
>>> len(config_hash(cfg))
64

Invalid documents raise ``ConfigError`` naming the problem:

>>> parse_config({"lattice": {"shape": [8]}, "coupling": {"support": "3..4"}, "regions": {"probes": ["4..5"]}})
Traceback (most recent call last):
vt.quantum.entcone.errors.ConfigError: invalid scenario: ...probe 4..5 overlaps the coupling region 3..4...
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from collections.abc import Mapping
from enum import StrEnum
from pathlib import Path
from typing import Annotated, Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from vt.quantum.entcone.errors import ConfigError, DomainError
from vt.quantum.entcone.lattice import LatticeGeometry, Metric, Region
from vt.quantum.entcone.model import SIGMA_X, SIGMA_Y, SIGMA_Z, CouplingForm, CouplingOperator, Couplings, SystemBSpec

logger = logging.getLogger(__name__)

RegionSpec = str | list[int]
"""
Inclusive range ``"16..23"``, a single site ``"5"`` or an explicit list of site indices.
"""

HASH_EXCLUDED = frozenset({"output_dir", "jobs"})
"""
Fields that do not influence the computed numbers and so stay out of ``config_hash``.
"""


def region_of(geometry: LatticeGeometry, spec: RegionSpec) -> Region:
    """
    >>> region_of(LatticeGeometry.chain(10), "2..4").label
    '2..4'
    >>> region_of(LatticeGeometry.chain(10), [7, 5]).label
    '5,7'
    """
    if isinstance(spec, str):
        return Region.from_range(geometry, spec)
    return geometry.region(spec)


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class LatticeSpec(_Spec):
    shape: tuple[int, ...] = (24,)
    metric: Metric = Metric.L1

    def geometry(self) -> LatticeGeometry:
        if len(self.shape) == 1:
            return LatticeGeometry.chain(self.shape[0])
        return LatticeGeometry.box(self.shape, self.metric)


class HamiltonianSpec(_Spec):
    """
    ``H_A`` as a tight-binding particle; ``flat: true`` switches the hopping off and ignores ``tau``.
    """

    tau: float = 1.0
    flat: bool = False
    potential: dict[int, float] = Field(default_factory=dict)
    hopping_range: int = 1
    decay_rate: float = 1.0

    @property
    def effective_tau(self) -> float:
        return 0.0 if self.flat else self.tau


class SystemBKind(StrEnum):
    TRIVIAL = "trivial"
    QUBIT = "qubit"
    MATRIX = "matrix"


class SystemBConfig(_Spec):
    kind: SystemBKind = SystemBKind.QUBIT
    gap: float = 1.0
    matrix: list[list[float]] | None = None

    def build(self) -> SystemBSpec:
        match self.kind:
            case SystemBKind.TRIVIAL:
                return SystemBSpec.trivial()
            case SystemBKind.QUBIT:
                return SystemBSpec.qubit(self.gap)
            case _:
                return SystemBSpec.from_matrix(np.asarray(self.matrix, dtype=float))

    @property
    def dim(self) -> int:
        match self.kind:
            case SystemBKind.TRIVIAL:
                return 1
            case SystemBKind.QUBIT:
                return 2
            case _:
                return len(self.matrix or [])


B_OPERATORS: Mapping[str, np.ndarray] = {
    "sigma_x": SIGMA_X,
    "sigma_y": SIGMA_Y,
    "sigma_z": SIGMA_Z,
}


class CouplingSpec(_Spec):
    """
    Interaction ``I`` localized in ``support``; ``b_operator`` selects the B-factor (identity for ``"identity"``).
    """

    form: CouplingForm = CouplingForm.DENSITY
    strength: float = 0.5
    support: RegionSpec = "11..12"
    b_operator: Literal["sigma_x", "sigma_y", "sigma_z", "identity"] = "sigma_x"

    def build(self, geometry: LatticeGeometry, d_b: int, rng: np.random.Generator) -> CouplingOperator:
        y = region_of(geometry, self.support)
        b_op = np.eye(d_b, dtype=complex) if self.b_operator == "identity" else B_OPERATORS[self.b_operator]
        match self.form:
            case CouplingForm.DENSITY:
                return Couplings.density(y, b_op, self.strength)
            case CouplingForm.HOPPING:
                return Couplings.hopping_modulation(y, self.strength, b_op)
            case _:
                return Couplings.random_block(y, d_b, self.strength, rng)


class RegionsSpec(_Spec):
    """
    ``q`` is the region the initial state is entangled in (or separable outside of); ``probes`` are the ``X``.
    """

    q: RegionSpec | None = None
    probes: list[RegionSpec] = Field(default_factory=lambda: [f"{x}..{x + 1}" for x in range(16, 23)])


# region initial-state recipes
class BellInQ(_Spec):
    recipe: Literal["bell-in-q"] = "bell-in-q"
    sites: tuple[int, int] = (2, 3)
    levels: tuple[int, int] = (0, 1)


class ProductRecipe(_Spec):
    recipe: Literal["product"] = "product"
    site: int = 0
    level: int = 0


class MixtureComponent(_Spec):
    site: int
    level: int = 0
    weight: float


class MixtureRecipe(_Spec):
    recipe: Literal["mixture"] = "mixture"
    components: list[MixtureComponent]


class GibbsLike(_Spec):
    recipe: Literal["gibbs-like"] = "gibbs-like"
    beta: float = 1.0


InitialStateSpec = Annotated[BellInQ | ProductRecipe | MixtureRecipe | GibbsLike, Field(discriminator="recipe")]
# endregion


class TimeGrid(_Spec):
    """
    ``points`` equally spaced times on ``[start, stop]``, or the explicit ``explicit`` list.
    """

    start: float = 0.0
    stop: float = 6.0
    points: int = 25
    explicit: list[float] | None = None

    def values(self) -> list[float]:
        if self.explicit is not None:
            return [float(t) for t in self.explicit]
        return [float(t) for t in np.linspace(self.start, self.stop, self.points)]


class FitSpec(_Spec):
    """
    Envelope-fit exclusions and protocol windows.

    ``protocol_mu`` is the decay rate of the separability envelope; its cone speed is ``speed_factor`` times the
    group velocity of the kinetic band unless ``cone_speed`` is set.
    """

    noise_floor: float = 1e-13
    margin: float = 2.0
    min_samples: int = 10
    mu_ref: float = 0.5
    window_factor: float = 0.8
    protocol_mu: float = 0.5
    speed_factor: float = 1.1
    cone_speed: float | None = None


class ScenarioConfig(_Spec):
    """
    A complete scenario; every default is written here.
    """

    name: str = "scenario"
    lattice: LatticeSpec = LatticeSpec()
    hamiltonian: HamiltonianSpec = HamiltonianSpec()
    system_b: SystemBConfig = SystemBConfig()
    coupling: CouplingSpec = CouplingSpec()
    regions: RegionsSpec = RegionsSpec()
    initial_state: InitialStateSpec = Field(default_factory=ProductRecipe)
    times: TimeGrid = TimeGrid()
    mu: list[float] = Field(default_factory=lambda: [0.25, 0.5, 1.0])
    kappa: float = 1e-3
    separable_iterations: int = 40
    fit: FitSpec = FitSpec()
    output_dir: Path = Path("results")
    seed: int = 0
    jobs: int = 1
    allow_violations: bool = False

    @property
    def geometry(self) -> LatticeGeometry:
        return self.lattice.geometry()

    @model_validator(mode="after")
    def _check(self) -> ScenarioConfig:
        if any(n < 1 for n in self.lattice.shape) or math.prod(self.lattice.shape) < 2:
            raise ValueError(f"lattice shape {list(self.lattice.shape)} needs at least 2 sites.")
        h = self.hamiltonian
        if not h.flat and not h.tau > 0:
            raise ValueError(f"tau must be > 0 unless the scenario is flat, got {h.tau}.")
        if h.hopping_range > 1 and len(self.lattice.shape) > 1:
            raise ValueError("hopping_range > 1 is supported on chains only.")
        times = self.times.values()
        if not times or any(t < 0 for t in times):
            raise ValueError("the time grid must be nonempty and nonnegative.")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError(f"the time grid must be strictly increasing, got {times}.")
        if any(not m > 0 for m in self.mu):
            raise ValueError(f"every mu must be positive, got {self.mu}.")
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}.")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}.")
        if self.system_b.kind is SystemBKind.MATRIX and not self.system_b.matrix:
            raise ValueError("system_b kind 'matrix' needs a matrix.")
        geometry = self.geometry
        size = geometry.size
        if any(not 0 <= site < size for site in h.potential):
            raise ValueError(f"potential sites must lie in 0..{size - 1}.")
        try:
            y = region_of(geometry, self.coupling.support)
            q = None if self.regions.q is None else region_of(geometry, self.regions.q)
            probes = [region_of(geometry, p) for p in self.regions.probes]
        except DomainError as err:
            raise ValueError(str(err)) from None
        if y.is_empty:
            raise ValueError("the coupling region must be nonempty.")
        if not probes:
            raise ValueError("at least one probe region is required.")
        for x in probes:
            if x.is_empty:
                raise ValueError("probe regions must be nonempty.")
            if x.intersects(y):
                raise ValueError(f"probe {x.label} overlaps the coupling region {y.label}.")
        self._check_state(q, size)
        return self

    def _check_state(self, q: Region | None, size: int) -> None:
        d_b = self.system_b.dim
        state = self.initial_state
        match state:
            case BellInQ():
                if q is None:
                    raise ValueError("recipe bell-in-q needs the region q.")
                if any(s not in q for s in state.sites):
                    raise ValueError(f"bell-in-q sites {list(state.sites)} must lie in q={q.label}.")
                if state.sites[0] == state.sites[1] or state.levels[0] == state.levels[1]:
                    raise ValueError("bell-in-q needs two distinct sites and two distinct levels.")
                if max(state.levels) >= d_b:
                    raise ValueError(f"bell-in-q levels {list(state.levels)} need d_B > {max(state.levels)}.")
            case GibbsLike():
                if q is None:
                    raise ValueError("recipe gibbs-like needs the region q.")
            case ProductRecipe():
                _check_site_level(state.site, state.level, size, d_b)
            case MixtureRecipe():
                if not state.components:
                    raise ValueError("a mixture needs at least one component.")
                for c in state.components:
                    _check_site_level(c.site, c.level, size, d_b)
                    if not c.weight > 0:
                        raise ValueError(f"mixture weights must be positive, got {c.weight}.")


def _check_site_level(site: int, level: int, size: int, d_b: int) -> None:
    if not 0 <= site < size:
        raise ValueError(f"site {site} is outside a lattice of {size} sites.")
    if not 0 <= level < d_b:
        raise ValueError(f"level {level} is outside a B system of dimension {d_b}.")


def parse_config(data: Mapping[str, Any] | None) -> ScenarioConfig:
    """
    Validate a plain mapping.

    :raises ConfigError: on any schema or consistency error.
    """
    try:
        return ScenarioConfig.model_validate(data or {})
    except ValidationError as err:
        raise ConfigError(f"invalid scenario: {err}") from err


def load_config(path: Path | str) -> ScenarioConfig:
    """
    Read and validate a YAML scenario with the safe loader.

    :raises ConfigError: if the file cannot be read or does not validate.
    """
    source = Path(path)
    yaml = YAML(typ="safe")
    try:
        with source.open("r", encoding="utf-8") as fh:
            data = yaml.load(fh)
    except (OSError, YAMLError) as err:
        raise ConfigError(f"cannot read scenario {source}: {err}") from err
    if data is not None and not isinstance(data, Mapping):
        raise ConfigError(f"scenario {source} must be a mapping at the top level.")
    config = parse_config(data)
    logger.debug("loaded scenario %s from %s", config.name, source)
    return config


def with_overrides(config: ScenarioConfig, **overrides: Any) -> ScenarioConfig:
    """
    Copy of ``config`` with top-level fields replaced; ``None`` values are ignored.

    >>> with_overrides(ScenarioConfig(), seed=7, kappa=None).seed
    7
    """
    data = config.model_dump()
    data.update({k: v for k, v in overrides.items() if v is not None})
    return parse_config(data)


def config_hash(config: ScenarioConfig) -> str:
    """
    SHA-256 of the canonical JSON form of the validated scenario, without the fields in ``HASH_EXCLUDED``.

    >>> config_hash(ScenarioConfig()) == config_hash(ScenarioConfig(output_dir=Path("elsewhere"), jobs=4))
    True
    >>> config_hash(ScenarioConfig()) == config_hash(ScenarioConfig(seed=1))
    False
    """
    payload = config.model_dump(mode="json", exclude=set(HASH_EXCLUDED))
    data = json.dumps(payload, sort_keys=True).encode("utf-8")
    return hashlib.sha256(data).hexdigest()
