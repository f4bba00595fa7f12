#!/usr/bin/env python3
# coding=utf-8

"""
Sweep samples, exponential light-cone fits and the report-based entanglement protocols.
"""

# region samples
from vt.quantum.entcone.lightcone.samples import CSV_COLUMNS as CSV_COLUMNS
from vt.quantum.entcone.lightcone.samples import SampleField as SampleField
from vt.quantum.entcone.lightcone.samples import SweepSample as SweepSample
from vt.quantum.entcone.lightcone.samples import samples_frame as samples_frame
from vt.quantum.entcone.lightcone.samples import samples_from_frame as samples_from_frame
from vt.quantum.entcone.lightcone.samples import distances as distances
# endregion

# region fits
from vt.quantum.entcone.lightcone.fit import ConeFitResult as ConeFitResult
from vt.quantum.entcone.lightcone.fit import fit_envelope as fit_envelope
from vt.quantum.entcone.lightcone.fit import envelope_violations as envelope_violations
from vt.quantum.entcone.lightcone.fit import arrival_time as arrival_time
from vt.quantum.entcone.lightcone.fit import reference_speed as reference_speed
# endregion

# region protocols
from vt.quantum.entcone.lightcone.protocols import TheoremAReport as TheoremAReport
from vt.quantum.entcone.lightcone.protocols import TheoremBReport as TheoremBReport
from vt.quantum.entcone.lightcone.protocols import verify_theorem_a as verify_theorem_a
from vt.quantum.entcone.lightcone.protocols import verify_theorem_b as verify_theorem_b
from vt.quantum.entcone.lightcone.protocols import WINDOW_FACTOR as WINDOW_FACTOR
# endregion
