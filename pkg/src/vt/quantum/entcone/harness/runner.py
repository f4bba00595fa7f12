#!/usr/bin/env python3
# coding=utf-8

"""
Scenario orchestration: model build, the parallel ``(X, t)`` sweep, fits, protocol verdicts and run records.
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from ruamel.yaml import YAML

from vt.quantum.entcone.entanglement import (
    WitnessValidation,
    localize,
    negativity,
    schmidt_number_witness,
    sep_distance_bounds,
    separability_lower_bound,
    validate_witness_inequality,
)
from vt.quantum.entcone.entanglement.localize import WEIGHT_FLOOR
from vt.quantum.entcone.errors import (
    DegenerateDesignError,
    DomainError,
    EntconeError,
    InsufficientSamplesError,
    NumericalError,
    ProvenanceError,
)
from vt.quantum.entcone.evolution import DensityOperator, ModelCaches, evolve, free_evolve, localized_norm
from vt.quantum.entcone.evolution import propagator_leakage
from vt.quantum.entcone.harness.config import ScenarioConfig, config_hash, parse_config, region_of
from vt.quantum.entcone.harness.states import StateCertificate, make_initial_state
from vt.quantum.entcone.lattice import Region, region_distance
from vt.quantum.entcone.lightcone import (
    SampleField,
    SweepSample,
    envelope_violations,
    fit_envelope,
    reference_speed,
    samples_frame,
    samples_from_frame,
    verify_theorem_a,
    verify_theorem_b,
)
from vt.quantum.entcone.model import BipartiteModel, build_model, tight_binding
from vt.quantum.entcone.velocity import DispersionLaw, DispersionLaws, c_mu, group_velocity_sup

logger = logging.getLogger(__name__)

VELOCITY_TOLERANCE = 1.15
VELOCITY_AGREEMENT = 0.15
FITTED_FIELDS = (SampleField.RESIDUAL, SampleField.LEAKAGE)


def dispersion_for(config: ScenarioConfig) -> DispersionLaw:
    """
    Kinetic band of the scenario's ``H_A``; the bounded potential does not enter ``c(mu)``.

    >>> dispersion_for(ScenarioConfig()).label
    'tight-binding-1d(tau=1.0)'
    """
    h = config.hamiltonian
    tau = h.effective_tau
    n = len(config.lattice.shape)
    if h.hopping_range == 1:
        return DispersionLaws.tight_binding(tau) if n == 1 else DispersionLaws.hypercubic(tau, n)
    amplitudes = [2.0 * tau * math.exp(-h.decay_rate * (r - 1)) for r in range(1, h.hopping_range + 1)]

    def omega(z: np.ndarray) -> np.ndarray:
        return sum((a * (1.0 - np.cos(r * z)) for r, a in enumerate(amplitudes, start=1)), np.zeros_like(z))

    return DispersionLaws.custom(omega, np.inf, periodic=True, name=f"long-range(tau={tau:g},R={h.hopping_range})")


def build_scenario_model(config: ScenarioConfig) -> BipartiteModel:
    """
    :raises ConditionsViolatedError: when ``alpha4 >= 1`` or ``alpha5 >= 1`` and the scenario does not allow it.
    """
    geometry = config.geometry
    h = config.hamiltonian
    a = tight_binding(
        geometry,
        h.effective_tau,
        {int(k): v for k, v in h.potential.items()},
        hopping_range=h.hopping_range,
        decay_rate=h.decay_rate,
    )
    b = config.system_b.build()
    coupling = config.coupling.build(geometry, b.dim, np.random.default_rng(config.seed))
    return build_model(a, b, coupling, allow_violations=config.allow_violations)


# region records
@dataclass
class RunRecord:
    """
    Everything a run produced, keyed by the hash of the scenario that produced it.

    ``separability`` holds one entry per sample of a probe disjoint from ``Q``, keyed by ``(X-label, t)`` and
    carrying the sample row. ``verdicts`` decide the pass/fail status; ``diagnostics`` are reported only.
    """

    config_hash: str
    config: dict[str, Any]
    build_report: dict[str, Any]
    certificate: dict[str, Any]
    samples: list[SweepSample]
    separability: list[dict[str, Any]] = field(default_factory=list)
    fits: dict[str, dict[str, Any]] = field(default_factory=dict)
    verdicts: dict[str, dict[str, Any]] = field(default_factory=dict)
    diagnostics: dict[str, Any] = field(default_factory=dict)
    velocity: dict[str, float] = field(default_factory=dict)
    wall_clock: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.get("passed", True) for v in self.verdicts.values())

    @property
    def scenario(self) -> ScenarioConfig:
        return parse_config(self.config)

    def as_dict(self) -> dict[str, Any]:
        frame = samples_frame(self.samples)
        return _plain(
            {
                "config_hash": self.config_hash,
                "passed": self.passed,
                "config": self.config,
                "build_report": self.build_report,
                "certificate": self.certificate,
                "velocity": self.velocity,
                "fits": self.fits,
                "verdicts": self.verdicts,
                "diagnostics": self.diagnostics,
                "separability": self.separability,
                "wall_clock": self.wall_clock,
                "notes": self.notes,
                "samples": frame.to_dict(orient="records"),
            }
        )

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunRecord:
        try:
            frame = pd.DataFrame.from_records(data["samples"])
            return cls(
                config_hash=data["config_hash"],
                config=data["config"],
                build_report=data["build_report"],
                certificate=data["certificate"],
                samples=samples_from_frame(frame) if len(frame) else [],
                separability=list(data.get("separability", [])),
                fits=dict(data.get("fits", {})),
                verdicts=dict(data.get("verdicts", {})),
                diagnostics=dict(data.get("diagnostics", {})),
                velocity=dict(data.get("velocity", {})),
                wall_clock=float(data.get("wall_clock", 0.0)),
                notes=list(data.get("notes", [])),
            )
        except KeyError as err:
            raise ProvenanceError(f"run record is missing the field {err}.") from None


def _plain(value: Any) -> Any:
    """
    Nested builtins only, so the safe YAML dumper accepts the record.
    """
    match value:
        case dict():
            return {str(k): _plain(v) for k, v in value.items()}
        case list() | tuple():
            return [_plain(v) for v in value]
        case np.bool_():
            return bool(value)
        case np.integer():
            return int(value)
        case np.floating():
            return _plain(float(value))
        case Path() | str():
            return str(value)
        case float() if math.isnan(value):
            return None
        case _:
            return value


def save_record(record: RunRecord, path: Path | str) -> Path:
    """
    Write the record as YAML.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    yaml = YAML(typ="safe")
    yaml.default_flow_style = False
    with target.open("w", encoding="utf-8") as fh:
        yaml.dump(record.as_dict(), fh)
    return target


def load_record(path: Path | str) -> RunRecord:
    """
    :raises ProvenanceError: when the file is not a run record.
    """
    yaml = YAML(typ="safe")
    with Path(path).open("r", encoding="utf-8") as fh:
        data = yaml.load(fh)
    if not isinstance(data, dict):
        raise ProvenanceError(f"{path} does not hold a run record.")
    return RunRecord.from_dict(data)


def merge_records(records: Sequence[RunRecord]) -> RunRecord:
    """
    Combine partial runs of one scenario (for instance, probes or times split across machines) and re-analyse.

    Samples are keyed by ``(X-label, t)``; the first record wins on duplicates. Rows are renumbered probe-major.

    :raises ProvenanceError: when the records come from different scenarios.
    """
    if not records:
        raise ProvenanceError("nothing to merge.")
    first = records[0]
    for other in records[1:]:
        if other.config_hash != first.config_hash:
            raise ProvenanceError(
                f"cannot merge runs of different scenarios: {first.config_hash[:12]} vs {other.config_hash[:12]}."
            )
    seen: dict[tuple[str, float], tuple[SweepSample, dict[str, Any] | None]] = {}
    for rec in records:
        by_row = {entry["row"]: entry for entry in rec.separability}
        for s in rec.samples:
            seen.setdefault((s.x_label, s.t), (s, by_row.get(s.row)))
    config = first.scenario
    order = {region_of(config.geometry, p).label: i for i, p in enumerate(config.regions.probes)}
    ordered = sorted(seen.values(), key=lambda pair: (order.get(pair[0].x_label, len(order)), pair[0].t))
    samples: list[SweepSample] = []
    separability: list[dict[str, Any]] = []
    for row, (s, sep) in enumerate(ordered):
        samples.append(replace(s, row=row))
        if sep is not None:
            separability.append({**sep, "row": row})
    merged = RunRecord(
        first.config_hash,
        first.config,
        first.build_report,
        first.certificate,
        samples,
        separability,
        wall_clock=sum(r.wall_clock for r in records),
        notes=[f"merged from {len(records)} records"],
    )
    return analyze(merged)


# endregion


# region sweep
@dataclass(frozen=True)
class _Probe:
    region: Region
    d: float
    d_q: float | None
    outside_q: bool


def _probes(config: ScenarioConfig, model: BipartiteModel, q: Region | None) -> list[_Probe]:
    y = model.coupling.support
    out = []
    for spec in config.regions.probes:
        x = region_of(model.geometry, spec)
        d = region_distance(x, y)
        if q is None:
            out.append(_Probe(x, d, None, True))
        elif x.intersects(q):
            out.append(_Probe(x, d, None, False))
        else:
            out.append(_Probe(x, d, region_distance(x, q), True))
    return out


def _seed_for(seed: int, probe: int, step: int) -> np.random.Generator:
    return np.random.default_rng([seed, probe, step])


def _sweep_time(
    step: int,
    t: float,
    gamma0: DensityOperator,
    caches: ModelCaches,
    probes: Sequence[_Probe],
    config: ScenarioConfig,
) -> list[tuple[int, SweepSample, dict[str, Any] | None]]:
    model = caches.model
    d_b = model.b.dim
    y = model.coupling.support
    gamma_t = evolve(gamma0, caches.hab, t)
    diff = gamma_t.matrix - free_evolve(gamma0, caches.h0, t).matrix
    rows = []
    for p_idx, probe in enumerate(probes):
        x = probe.region
        residual = localized_norm(diff, x, d_b) if t > 0 else 0.0
        leakage = propagator_leakage(x, y, caches.a, t)
        loc = localize(gamma_t, x)
        weight = max(loc.weight, 0.0)
        neg, witness, sep_lower = 0.0, 1, 0.0
        sep: dict[str, Any] | None = None
        if weight > WEIGHT_FLOOR:
            neg = negativity(loc)
            witness = schmidt_number_witness(loc).witness_lower_bound
            sep_lower = separability_lower_bound(loc)
        if probe.outside_q:
            verdict = sep_distance_bounds(
                loc, config.separable_iterations, kappa=config.kappa, rng=_seed_for(config.seed, p_idx, step)
            )
            sep = {"x_label": x.label, "t": t, **verdict.as_dict()}
        sample = SweepSample(
            d=probe.d,
            t=t,
            residual=residual,
            leakage=leakage,
            negativity=neg,
            sn_witness=witness,
            x_label=x.label,
            sep_lower=sep_lower,
            d_q=probe.d_q,
            weight=weight,
        )
        rows.append((p_idx, sample, sep))
    logger.debug("swept t=%g over %d probes", t, len(probes))
    return rows


def sweep(
    config: ScenarioConfig,
    caches: ModelCaches,
    gamma0: DensityOperator,
    q: Region | None = None,
    *,
    jobs: int | None = None,
) -> tuple[list[SweepSample], list[dict[str, Any]]]:
    """
    Evaluate every ``(X, t)`` point of the scenario grid.

    Times are the parallel unit: ``Gamma_t`` is computed once per time and shared by all probes. Rows are numbered
    probe-major in the order of the scenario file, independent of the number of workers.

    :return: the samples and the separability entries of the probes disjoint from ``Q``.
    """
    probes = _probes(config, caches.model, q)
    times = config.times.values()
    workers = jobs or config.jobs

    def task(item: tuple[int, float]) -> list[tuple[int, SweepSample, dict[str, Any] | None]]:
        return _sweep_time(item[0], item[1], gamma0, caches, probes, config)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        per_time = list(pool.map(task, enumerate(times)))
    grid: dict[tuple[int, int], tuple[SweepSample, dict[str, Any] | None]] = {}
    for step, rows in enumerate(per_time):
        for p_idx, sample, sep in rows:
            grid[(p_idx, step)] = (sample, sep)
    samples: list[SweepSample] = []
    separability: list[dict[str, Any]] = []
    for row, key in enumerate(sorted(grid)):
        sample, sep = grid[key]
        samples.append(replace(sample, row=row))
        if sep is not None:
            separability.append({**sep, "row": row})
    return samples, separability


# endregion


# region analysis
def velocity_table(laws: Sequence[DispersionLaw], mus: Sequence[float]) -> pd.DataFrame:
    """
    ``c(mu)`` of every law at every ``mu``; ``mu`` outside a law's strip yields a row with an empty speed.

    >>> velocity_table([DispersionLaws.tight_binding(1.0)], [0.5])[["law", "mu"]].values.tolist()
    [['tight-binding-1d(tau=1.0)', 0.5]]
    """
    rows = []
    for law in laws:
        for mu in mus:
            try:
                r = c_mu(law, mu)
            except DomainError as err:
                logger.warning("%s at mu=%g: %s", law.label, mu, err)
                rows.append({"law": law.label, "mu": mu, "c_mu": math.nan, "attained_at": "",
                             "supremum_at_infinity": False})
                continue
            attained = ";".join(f"({k:.6g},{eta:.6g})" for k, eta in r.attained_at)
            rows.append({"law": law.label, "mu": mu, "c_mu": r.c_of_mu, "attained_at": attained,
                         "supremum_at_infinity": r.supremum_at_infinity})
    return pd.DataFrame(rows, columns=["law", "mu", "c_mu", "attained_at", "supremum_at_infinity"])


def analyze(record: RunRecord) -> RunRecord:
    """
    Fit envelopes and run the protocols on the samples of ``record``, replacing earlier fits and verdicts.
    """
    config = record.scenario
    fit_cfg = config.fit
    tau = config.hamiltonian.effective_tau
    law = dispersion_for(config)
    record.fits, record.verdicts, record.diagnostics = {}, {}, {}
    record.velocity = {}
    for mu in config.mu:
        try:
            record.velocity[f"{mu:g}"] = c_mu(law, mu).c_of_mu
        except DomainError as err:
            record.notes.append(f"c({mu:g}) unavailable: {err}")
    c_ref = reference_speed(tau, fit_cfg.mu_ref)
    fits = {}
    for fld in FITTED_FIELDS:
        try:
            fit = fit_envelope(
                record.samples,
                fld,
                c_ref,
                noise_floor=fit_cfg.noise_floor,
                margin=fit_cfg.margin,
                min_samples=fit_cfg.min_samples,
            )
        except (InsufficientSamplesError, DegenerateDesignError, NumericalError) as err:
            record.fits[str(fld)] = {"error": str(err)}
            record.notes.append(f"{fld} fit skipped: {err}")
            logger.info("%s fit skipped: %s", fld, err)
            continue
        fits[str(fld)] = fit
        record.fits[str(fld)] = fit.as_dict()
        bad = envelope_violations(record.samples, fit)
        record.verdicts[f"envelope_{fld}"] = {
            "passed": not bad,
            "violations": [s.row for s in bad],
            "rows": list(fit.rows),
        }
        try:
            bound = VELOCITY_TOLERANCE * c_mu(law, fit.mu_fit).c_of_mu
        except DomainError as err:
            record.notes.append(f"velocity check for {fld} skipped: {err}")
            continue
        record.verdicts[f"velocity_{fld}"] = {
            "passed": fit.c_fit <= bound,
            "c_fit": fit.c_fit,
            "mu_fit": fit.mu_fit,
            "bound": bound,
        }
    if {"residual", "leakage"} <= fits.keys():
        a, b = fits["residual"].c_fit, fits["leakage"].c_fit
        gap = abs(a - b) / max(abs(a), abs(b), 1e-12)
        record.verdicts["velocity_agreement"] = {
            "passed": gap <= VELOCITY_AGREEMENT,
            "relative_gap": gap,
            "c_residual": a,
            "c_leakage": b,
        }
    c_fit = next((fits[f].c_fit for f in ("leakage", "residual") if f in fits), c_ref)
    if c_fit <= 0:
        c_fit = max(c_ref, 1e-12)
    _protocols(record, config, law, c_fit)
    return record


def _protocols(record: RunRecord, config: ScenarioConfig, law: DispersionLaw, c_fit: float) -> None:
    fit_cfg = config.fit
    if config.regions.q is None:
        return
    geometry = config.geometry
    q = region_of(geometry, config.regions.q)
    probes = {x.label: x for x in (region_of(geometry, p) for p in config.regions.probes)}
    by_label: dict[str, list[SweepSample]] = {}
    for s in record.samples:
        by_label.setdefault(s.x_label, []).append(s)
    outside: list[SweepSample] = []
    for label, rows in by_label.items():
        x = probes.get(label)
        if x is None:
            continue
        if not x.intersects(q):
            outside.extend(rows)
        elif x.issuperset(q):
            _theorem_b(record, config, x, q, rows, c_fit)
    if outside:
        speed = fit_cfg.cone_speed or fit_cfg.speed_factor * group_velocity_sup(law)
        report = verify_theorem_a(
            outside,
            fit_cfg.protocol_mu,
            max(speed, 1e-12),
            fit_cfg.margin,
            c_fit=c_fit,
            window_factor=fit_cfg.window_factor,
            noise_floor=fit_cfg.noise_floor,
            min_samples=fit_cfg.min_samples,
        )
        record.verdicts["theorem_a"] = report.as_dict()
        sep_rows = {e["row"]: e for e in record.separability}
        checked = [sep_rows[r] for r in report.checked_rows if r in sep_rows]
        record.diagnostics["separability"] = {
            "checked": len(checked),
            "max_upper_bound": max((e["upper_bound"] for e in checked), default=0.0),
            "statuses": sorted({e["status"] for e in checked}),
            "kappa": config.kappa,
        }
        _separability_envelope(record, outside, c_fit)


def _separability_envelope(record: RunRecord, outside: list[SweepSample], c_fit: float) -> None:
    # fitted independently of the residual exponent
    fit_cfg = record.scenario.fit
    try:
        fit = fit_envelope(
            outside,
            SampleField.SEP_LOWER,
            c_fit,
            noise_floor=fit_cfg.noise_floor,
            margin=fit_cfg.margin,
            min_samples=fit_cfg.min_samples,
        )
    except (InsufficientSamplesError, DegenerateDesignError, NumericalError) as err:
        record.notes.append(f"separability envelope not fitted: {err}")
        return
    residual_mu = record.fits.get("residual", {}).get("mu_fit")
    record.diagnostics["separability_envelope"] = {
        "mu_fit": fit.mu_fit,
        "c_fit": fit.c_fit,
        "samples_used": fit.samples_used,
        "exponent_ratio": fit.mu_fit / residual_mu if residual_mu else None,
    }


def _theorem_b(
    record: RunRecord, config: ScenarioConfig, x: Region, q: Region, rows: list[SweepSample], c_fit: float
) -> None:
    k = record.certificate.get("schmidt_rank")
    if not k or k < 2:
        record.notes.append(f"entangled-inside-Q protocol skipped for {x.label}: initial Schmidt rank {k}")
        return
    y = region_of(config.geometry, config.coupling.support)
    outside = x.complement()
    d_out = region_distance(outside, q) if not outside.is_empty else math.inf
    d_prime = min(region_distance(x, y), d_out)
    report = verify_theorem_b(rows, int(k), c_fit, d_prime, window_factor=config.fit.window_factor)
    record.verdicts[f"theorem_b[{x.label}]"] = report.as_dict()


# endregion


def run_scenario(config: ScenarioConfig, *, jobs: int | None = None) -> RunRecord:
    """
    Build the model, prepare ``Gamma_0``, sweep the grid and analyse it.

    :param config: validated scenario.
    :param jobs: worker threads of the sweep, default ``config.jobs``.
    :raises ConditionsViolatedError: when the coupling violates the relative bounds and the override is off.
    :raises EntconeError: any module error, annotated with the scenario name.
    """
    start = time.perf_counter()
    try:
        model = build_scenario_model(config)
        caches = ModelCaches.from_model(model)
        q = None if config.regions.q is None else region_of(model.geometry, config.regions.q)
        gamma0, certificate = make_initial_state(config.initial_state, model, q)
        witness: WitnessValidation = validate_witness_inequality()
        samples, separability = sweep(config, caches, gamma0, q, jobs=jobs)
    except EntconeError as err:
        err.add_note(f"while running scenario {config.name!r}")
        raise
    record = RunRecord(
        config_hash(config),
        config.model_dump(mode="json"),
        model.report.as_dict(),
        _certificate_dict(certificate),
        samples,
        separability,
    )
    if not witness.passed:
        record.notes.append("Schmidt-number witness failed validation; witness values are heuristic")
    analyze(record)
    record.wall_clock = time.perf_counter() - start
    logger.info(
        "scenario %s: %d samples in %.2fs, %s",
        config.name,
        len(samples),
        record.wall_clock,
        "pass" if record.passed else "FAIL",
    )
    return record


def _certificate_dict(certificate: StateCertificate) -> dict[str, Any]:
    return _plain(certificate.as_dict())
