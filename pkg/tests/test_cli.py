#!/usr/bin/env python3
# coding=utf-8

import io
import json

import pandas as pd
import pytest
from ruamel.yaml import YAML

from vt.quantum.entcone.harness.cli import EXIT_ERROR, EXIT_OK, EXIT_VERDICT_FAILED, build_parser, main


@pytest.fixture
def write_config(tmp_path):
    def write(document: dict) -> str:
        path = tmp_path / f"{document['name']}.yaml"
        with path.open("w", encoding="utf-8") as fh:
            YAML(typ="safe").dump(document, fh)
        return str(path)

    return write


class TestVelocity:
    def test_table_on_stdout(self, capsys):
        assert main(["velocity", "--tau", "1", "--mu", "0.5", "1.0", "-q"]) == EXIT_OK
        table = pd.read_csv(io.StringIO(capsys.readouterr().out))
        assert len(table) == 2
        assert set(table["law"]) == {"tight-binding-1d(tau=1.0)"}

    def test_table_in_output_dir(self, tmp_path):
        out = tmp_path / "v"
        assert main(["velocity", "--law", "relativistic", "--mass", "1", "2", "--output-dir", str(out), "-q"]) == 0
        table = pd.read_csv(out / "velocity.csv")
        assert table["law"].str.startswith("relativistic").all()
        assert len(table) == 8


class TestScenarioCommands:
    def test_evolve_writes_only_the_samples(self, tmp_path, make_document, write_config):
        out = tmp_path / "evolve"
        assert main(["evolve", "--config", write_config(make_document()), "--output-dir", str(out), "-q"]) == EXIT_OK
        assert sorted(p.name for p in out.iterdir()) == ["samples.csv"]

    def test_cone_skips_the_report(self, tmp_path, make_document, write_config):
        document = make_document(
            name="product",
            regions={"probes": ["7..8", "8..9"]},
            initial_state={"recipe": "product", "site": 4, "level": 0},
        )
        out = tmp_path / "cone"
        code = main(["cone", "--config", write_config(document), "--output-dir", str(out), "-q"])
        assert code in (EXIT_OK, EXIT_VERDICT_FAILED)
        assert (out / "summary.json").exists()
        assert not (out / "report.yaml").exists()

    def test_verify_then_report_agree(self, tmp_path, make_document, write_config):
        out = tmp_path / "verify"
        code = main(["verify", "--config", write_config(make_document()), "--output-dir", str(out), "-q"])
        assert code in (EXIT_OK, EXIT_VERDICT_FAILED)
        assert (out / "report.yaml").exists()
        passed = json.loads((out / "summary.json").read_text(encoding="utf-8"))["passed"]
        assert (code == EXIT_OK) == passed

        again = tmp_path / "again"
        record = str(out / "report.yaml")
        args = ["report", "--record", record, "--record", record, "--output-dir", str(again), "-q"]
        assert main(args) == code
        assert (again / "samples.csv").exists()

    def test_seed_override_changes_the_hash(self, tmp_path, make_document, write_config):
        config = write_config(make_document())
        first, second = tmp_path / "a", tmp_path / "b"
        main(["verify", "--config", config, "--output-dir", str(second), "--seed", "7", "-q"])
        main(["verify", "--config", config, "--output-dir", str(first), "-q"])
        hashes = {json.loads((d / "summary.json").read_text(encoding="utf-8"))["config_hash"] for d in (first, second)}
        assert len(hashes) == 2


class TestErrors:
    def test_scenario_command_needs_config(self):
        assert main(["cone", "-q"]) == EXIT_ERROR

    def test_missing_config_file(self, tmp_path):
        assert main(["verify", "--config", str(tmp_path / "absent.yaml"), "-q"]) == EXIT_ERROR

    def test_unknown_command_is_a_usage_error(self):
        with pytest.raises(SystemExit) as info:
            build_parser().parse_args(["plot"])
        assert info.value.code == EXIT_ERROR

    def test_verbosity_flags_are_exclusive(self):
        with pytest.raises(SystemExit) as info:
            main(["velocity", "-v", "-q"])
        assert info.value.code == EXIT_ERROR
