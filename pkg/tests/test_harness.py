#!/usr/bin/env python3
# coding=utf-8

import json
import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from vt.quantum.entcone.errors import ConditionsViolatedError, ConfigError, DomainError, ProvenanceError
from vt.quantum.entcone.harness import (
    OutputDirOps,
    RunRecord,
    ScenarioConfig,
    analyze,
    build_scenario_model,
    config_hash,
    emit_outputs,
    load_config,
    load_record,
    make_initial_state,
    merge_records,
    parse_config,
    region_of,
    run_scenario,
    save_record,
    velocity_table,
    with_overrides,
)
from vt.quantum.entcone.harness.config import BellInQ, GibbsLike, MixtureRecipe
from vt.quantum.entcone.lightcone import CSV_COLUMNS, SweepSample, arrival_time, samples_frame
from vt.quantum.entcone.velocity import DispersionLaws


class TestConfig:
    @pytest.mark.parametrize("name", ["reference.yaml", "free_chain.yaml", "flat_band.yaml"])
    def test_shipped_scenarios_validate(self, scenarios_dir, name):
        config = load_config(scenarios_dir / name)
        assert config.regions.probes
        assert len(config_hash(config)) == 64

    def test_empty_document_means_defaults(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_config(path) == ScenarioConfig()

    def test_unknown_keys_are_rejected(self, make_document):
        with pytest.raises(ConfigError, match="invalid scenario"):
            parse_config(make_document(colour="blue"))

    def test_probe_overlapping_the_coupling(self, make_document):
        with pytest.raises(ConfigError, match="overlaps the coupling region"):
            parse_config(make_document(regions={"q": "0..1", "probes": ["3..4"]}))

    def test_bell_pair_outside_q(self, make_document):
        with pytest.raises(ConfigError, match="must lie in q"):
            parse_config(make_document(initial_state={"recipe": "bell-in-q", "sites": [1, 2]}))

    def test_time_grid_must_increase(self, make_document):
        with pytest.raises(ConfigError, match="strictly increasing"):
            parse_config(make_document(times={"explicit": [0.0, 1.0, 1.0]}))

    def test_long_range_hopping_only_on_chains(self, make_document):
        doc = make_document(lattice={"shape": [4, 4]}, hamiltonian={"hopping_range": 2})
        with pytest.raises(ConfigError, match="chains only"):
            parse_config(doc)

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read scenario"):
            load_config(tmp_path / "missing.yaml")

    def test_top_level_must_be_a_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="must be a mapping"):
            load_config(path)

    def test_overrides_and_hash(self, small_config):
        changed = with_overrides(small_config, seed=5, jobs=4, kappa=None)
        assert changed.seed == 5 and changed.jobs == 4
        assert changed.kappa == small_config.kappa
        assert config_hash(with_overrides(small_config, jobs=4)) == config_hash(small_config)
        assert config_hash(changed) != config_hash(small_config)


class TestInitialStates:
    def test_bell_pair_certificate(self, small_config):
        model = build_scenario_model(small_config)
        q = region_of(model.geometry, "0..1")
        gamma, cert = make_initial_state(small_config.initial_state, model, q)
        assert gamma.is_pure
        assert cert.schmidt_rank == 2
        assert cert.negativity == pytest.approx(0.5)
        assert not cert.ppt and not cert.separable_by_construction
        assert cert.support_residual == pytest.approx(0.0, abs=1e-12)

    def test_bell_pair_needs_q(self, small_config):
        model = build_scenario_model(small_config)
        with pytest.raises(DomainError, match="needs the region Q"):
            make_initial_state(BellInQ(sites=(0, 1)), model)

    def test_mixture_weights_are_renormalized(self, small_config):
        model = build_scenario_model(small_config)
        recipe = MixtureRecipe.model_validate(
            {"components": [{"site": 7, "weight": 1.0}, {"site": 8, "level": 1, "weight": 3.0}]}
        )
        gamma, cert = make_initial_state(recipe, model)
        diagonal = gamma.matrix.diagonal().real
        assert diagonal[14] == pytest.approx(0.25) and diagonal[17] == pytest.approx(0.75)
        assert cert.separable_by_construction and cert.schmidt_rank is None
        assert cert.support_residual is None

    def test_gibbs_like_state_is_supported_in_q_and_separable(self, small_config):
        model = build_scenario_model(small_config)
        q = region_of(model.geometry, "0..1")
        gamma, cert = make_initial_state(GibbsLike(beta=2.0), model, q)
        assert gamma.trace == pytest.approx(1.0)
        assert cert.support_residual == pytest.approx(0.0, abs=1e-12)
        assert cert.ppt
        assert cert.negativity == pytest.approx(0.0, abs=1e-10)


class TestRun:
    def test_sweep_rows_are_probe_major(self, small_config):
        record = run_scenario(small_config)
        assert [s.row for s in record.samples] == list(range(15))
        assert {s.x_label for s in record.samples[:5]} == {"7..8"}
        assert {s.x_label for s in record.samples[10:]} == {"0..2"}
        assert [s.t for s in record.samples[:5]] == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])
        assert record.config_hash == config_hash(small_config)

    def test_distances_and_initial_residual(self, small_config):
        record = run_scenario(small_config)
        first = record.samples[0]
        assert (first.d, first.d_q, first.residual, first.leakage) == (2.0, 6.0, 0.0, 0.0)
        assert record.samples[10].d_q is None

    def test_protocol_verdicts(self, small_config):
        record = run_scenario(small_config)
        assert "theorem_a" in record.verdicts
        inside = record.verdicts["theorem_b[0..2]"]
        assert inside["passed"] and inside["k"] == 2
        assert len(record.separability) == 10
        assert record.certificate["schmidt_rank"] == 2

    def test_worker_count_does_not_change_the_numbers(self, small_config):
        serial = run_scenario(small_config, jobs=1)
        parallel = run_scenario(small_config, jobs=3)
        pd.testing.assert_frame_equal(
            samples_frame(serial.samples), samples_frame(parallel.samples), check_exact=False, rtol=1e-10, atol=1e-14
        )
        assert [(e["row"], e["status"]) for e in serial.separability] == [
            (e["row"], e["status"]) for e in parallel.separability
        ]

    def test_separability_exponent_is_reported_or_explained(self, small_config):
        record = run_scenario(small_config)
        envelope = record.diagnostics.get("separability_envelope")
        if envelope is None:
            assert any(n.startswith("separability envelope not fitted") for n in record.notes)
        else:
            assert envelope["mu_fit"] > 0
        assert record.passed == all(v.get("passed", True) for v in record.verdicts.values())

    def test_free_particle_has_no_residual(self, product_config):
        config = with_overrides(product_config, coupling={"strength": 0.0, "support": "4..5"})
        record = run_scenario(config)
        assert all(s.residual == pytest.approx(0.0, abs=1e-14) for s in record.samples)
        assert "error" in record.fits["residual"]
        assert any("residual fit skipped" in n for n in record.notes)

    def test_violated_conditions_name_the_scenario(self, make_document):
        config = parse_config(make_document(hamiltonian={"flat": True}, coupling={"strength": 5.0, "support": "4..5"}))
        with pytest.raises(ConditionsViolatedError) as info:
            run_scenario(config)
        assert any("small" in note for note in info.value.__notes__)

    def test_allowed_violations_are_recorded(self, make_document):
        config = parse_config(
            make_document(
                hamiltonian={"flat": True},
                coupling={"strength": 5.0, "support": "4..5"},
                allow_violations=True,
                times={"explicit": [0.0, 0.5]},
            )
        )
        assert run_scenario(config).build_report["overridden"]


def cone_rows(c_residual: float, c_leakage: float, mu: float = 0.9, bump: int | None = None) -> list[SweepSample]:
    """
    Exact envelopes on d = 4..13, t in [0, 2]; ``bump`` lifts one residual a thousandfold.
    """
    rows = []
    for d in range(4, 14):
        for t in np.linspace(0.0, 2.0, 9):
            residual = 0.4 * math.exp(-mu * (d - c_residual * t))
            leakage = 0.2 * math.exp(-mu * (d - c_leakage * t))
            if len(rows) == bump:
                residual *= 1e3
            rows.append(SweepSample(float(d), float(t), residual, leakage, row=len(rows)))
    return rows


class TestVerdicts:
    @staticmethod
    def analyzed(config: ScenarioConfig, rows: list[SweepSample]) -> RunRecord:
        record = run_scenario(config)
        record.samples = rows
        return analyze(record)

    def test_consistent_cone_passes(self, small_config):
        record = self.analyzed(small_config, cone_rows(2.0, 2.0))
        for name in ("envelope_residual", "envelope_leakage", "velocity_residual", "velocity_leakage"):
            assert record.verdicts[name]["passed"], name
        assert record.verdicts["velocity_agreement"]["relative_gap"] == pytest.approx(0.0, abs=1e-9)
        assert record.passed

    def test_sample_above_the_envelope_fails(self, small_config):
        bumped = 8 * 9
        record = self.analyzed(small_config, cone_rows(2.0, 2.0, bump=bumped))
        verdict = record.verdicts["envelope_residual"]
        assert not verdict["passed"]
        assert bumped in verdict["violations"]
        assert record.verdicts["envelope_leakage"]["passed"]
        assert not record.passed

    def test_speed_above_the_dispersion_bound_fails(self, small_config):
        record = self.analyzed(small_config, cone_rows(4.0, 4.0))
        verdict = record.verdicts["velocity_residual"]
        assert verdict["c_fit"] == pytest.approx(4.0)
        assert verdict["bound"] == pytest.approx(1.15 * 2.0 * math.sinh(0.9) / 0.9)
        assert not verdict["passed"]
        assert not record.passed

    def test_residual_and_leakage_speeds_must_agree(self, small_config):
        record = self.analyzed(small_config, cone_rows(2.5, 2.0))
        assert record.verdicts["velocity_residual"]["passed"]
        assert record.verdicts["velocity_leakage"]["passed"]
        agreement = record.verdicts["velocity_agreement"]
        assert agreement["relative_gap"] == pytest.approx(0.2)
        assert not agreement["passed"]


class TestRecords:
    def test_record_survives_the_disk(self, small_config, tmp_path):
        record = run_scenario(small_config)
        loaded = load_record(save_record(record, tmp_path / "record.yaml"))
        assert loaded.config_hash == record.config_hash
        assert loaded.verdicts.keys() == record.verdicts.keys()
        assert [s.x_label for s in loaded.samples] == [s.x_label for s in record.samples]
        assert loaded.samples[10].d_q is None

    def test_merging_duplicates_keeps_one_copy(self, small_config):
        record = run_scenario(small_config)
        merged = merge_records([record, record])
        assert len(merged.samples) == len(record.samples)
        assert [s.row for s in merged.samples] == list(range(len(record.samples)))
        assert [(s.x_label, s.t) for s in merged.samples] == [(s.x_label, s.t) for s in record.samples]
        assert merged.verdicts.keys() == record.verdicts.keys()
        assert "merged from 2 records" in merged.notes

    def test_merging_different_scenarios_fails(self, small_config):
        first = run_scenario(small_config)
        second = run_scenario(with_overrides(small_config, seed=1))
        with pytest.raises(ProvenanceError, match="different scenarios"):
            merge_records([first, second])

    def test_nothing_to_merge(self):
        with pytest.raises(ProvenanceError):
            merge_records([])

    def test_incomplete_record(self):
        with pytest.raises(ProvenanceError, match="missing the field"):
            RunRecord.from_dict({"config_hash": "abc", "samples": []})

    def test_not_a_record(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("just text\n", encoding="utf-8")
        with pytest.raises(ProvenanceError):
            load_record(path)


def test_velocity_table_marks_mu_outside_the_strip():
    table = velocity_table([DispersionLaws.tight_binding(1.0), DispersionLaws.relativistic(1.0)], [0.5, 1.0])
    assert len(table) == 4
    rel = table[table["law"].str.startswith("relativistic")].set_index("mu")
    assert math.isnan(rel.loc[1.0, "c_mu"])
    assert rel.loc[0.5, "c_mu"] <= 1.0 + 1e-9


class TestOutputs:
    def test_all_artifacts(self, small_config):
        record = run_scenario(small_config)
        written = emit_outputs(record)
        names = {p.name for p in written}
        assert names == {"samples.csv", "heatmap.svg", "arrivals.svg", "report.yaml", "summary.json"}
        assert all(p.parent == small_config.output_dir for p in written)
        frame = pd.read_csv(small_config.output_dir / "samples.csv")
        assert frame.columns.tolist() == list(CSV_COLUMNS)
        assert len(frame) == 15
        summary = json.loads((small_config.output_dir / "summary.json").read_text(encoding="utf-8"))
        assert summary["config_hash"] == record.config_hash
        assert summary["passed"] == record.passed

    def test_outputs_are_byte_stable(self, small_config, tmp_path):
        record = run_scenario(small_config)
        a = emit_outputs(record, ["csv", "svg"], output_dir=tmp_path / "a")
        b = emit_outputs(record, ["csv", "svg"], output_dir=tmp_path / "b")
        for pa, pb in zip(a, b):
            assert pa.read_bytes() == pb.read_bytes()

    def test_single_time_skips_the_heatmap(self, make_document, tmp_path):
        config = parse_config(make_document(times={"explicit": [0.5]}, output_dir=str(tmp_path / "one")))
        record = run_scenario(config)
        names = {p.name for p in emit_outputs(record, ["csv", "svg"])}
        assert names == {"samples.csv", "arrivals.svg"}
        assert any("heatmap skipped" in n for n in record.notes)

    def test_empty_table_writes_headers_only(self, small_config, tmp_path):
        record = RunRecord(config_hash(small_config), small_config.model_dump(mode="json"), {}, {}, [])
        written = emit_outputs(record, ["csv", "svg"], output_dir=tmp_path)
        assert [p.name for p in written] == ["samples.csv"]
        assert (tmp_path / "samples.csv").read_text(encoding="utf-8").strip() == ",".join(CSV_COLUMNS)

    def test_unwritable_directory(self, small_config, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("", encoding="utf-8")
        record = RunRecord(config_hash(small_config), small_config.model_dump(mode="json"), {}, {}, [])
        with pytest.raises(DomainError, match="not writable"):
            emit_outputs(record, ["csv"], output_dir=blocker / "sub")

    def test_output_directory_from_exactly_one_source(self):
        assert OutputDirOps.strictly_one_required(Path("x")) == Path("x")
        with pytest.raises(ValueError):
            OutputDirOps.strictly_one_required()


@pytest.mark.slow
def test_reference_scenario(scenarios_dir, tmp_path):
    config = with_overrides(load_config(scenarios_dir / "reference.yaml"), output_dir=tmp_path, jobs=4)
    record = run_scenario(config)
    assert len(record.samples) == 8 * 25
    assert {"residual", "leakage"} <= record.fits.keys()
    assert "theorem_b[0..7]" in record.verdicts
    assert record.build_report["alpha4"] < 1.0 and record.build_report["alpha5"] < 1.0
    assert np.isfinite(record.velocity["0.5"])
    assert len(emit_outputs(record)) == 5
    assert record.verdicts["envelope_residual"]["passed"]
    assert record.verdicts["velocity_residual"]["passed"]

    arrivals = [arrival_time(record.samples, "residual", d, 1e-3) for d in sorted({s.d for s in record.samples})]
    front = [math.inf if a is None else a for a in arrivals]
    assert front == sorted(front)
    assert math.isfinite(front[0])
