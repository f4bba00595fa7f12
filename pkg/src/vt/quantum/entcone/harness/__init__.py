#!/usr/bin/env python3
# coding=utf-8

"""
Scenario files, initial states, the sweep runner and its outputs.
"""

# region configuration
from vt.quantum.entcone.harness.config import ScenarioConfig as ScenarioConfig
from vt.quantum.entcone.harness.config import load_config as load_config
from vt.quantum.entcone.harness.config import parse_config as parse_config
from vt.quantum.entcone.harness.config import with_overrides as with_overrides
from vt.quantum.entcone.harness.config import config_hash as config_hash
from vt.quantum.entcone.harness.config import region_of as region_of
# endregion

# region initial states
from vt.quantum.entcone.harness.states import StateCertificate as StateCertificate
from vt.quantum.entcone.harness.states import make_initial_state as make_initial_state
# endregion

# region runs
from vt.quantum.entcone.harness.runner import RunRecord as RunRecord
from vt.quantum.entcone.harness.runner import analyze as analyze
from vt.quantum.entcone.harness.runner import build_scenario_model as build_scenario_model
from vt.quantum.entcone.harness.runner import load_record as load_record
from vt.quantum.entcone.harness.runner import merge_records as merge_records
from vt.quantum.entcone.harness.runner import run_scenario as run_scenario
from vt.quantum.entcone.harness.runner import save_record as save_record
from vt.quantum.entcone.harness.runner import sweep as sweep
from vt.quantum.entcone.harness.runner import velocity_table as velocity_table
# endregion

# region outputs
from vt.quantum.entcone.harness.outputs import OutputFormat as OutputFormat
from vt.quantum.entcone.harness.outputs import OutputDirOps as OutputDirOps
from vt.quantum.entcone.harness.outputs import emit_outputs as emit_outputs
# endregion
