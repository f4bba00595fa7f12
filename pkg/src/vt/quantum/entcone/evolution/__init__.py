#!/usr/bin/env python3
# coding=utf-8

"""
Exact evolution of density operators under ``H_AB`` and ``H_0``, leakage norms and trace-norm estimate checks.
"""

# region states and caches
from vt.quantum.entcone.evolution.density import DensityOperator as DensityOperator
from vt.quantum.entcone.evolution.density import SpectralCache as SpectralCache
from vt.quantum.entcone.evolution.density import SpectralSource as SpectralSource
from vt.quantum.entcone.evolution.density import ModelCaches as ModelCaches
# endregion

# region dynamics
from vt.quantum.entcone.evolution.dynamics import evolve as evolve
from vt.quantum.entcone.evolution.dynamics import free_evolve as free_evolve
from vt.quantum.entcone.evolution.dynamics import localized_norm as localized_norm
from vt.quantum.entcone.evolution.dynamics import duhamel_residual_norm as duhamel_residual_norm
from vt.quantum.entcone.evolution.dynamics import duhamel_reconstruction as duhamel_reconstruction
from vt.quantum.entcone.evolution.dynamics import propagator_leakage as propagator_leakage
from vt.quantum.entcone.evolution.dynamics import free_block as free_block
# endregion

# region estimate checks
from vt.quantum.entcone.evolution.estimates import UniformBoundReport as UniformBoundReport
from vt.quantum.entcone.evolution.estimates import EstimateChainReport as EstimateChainReport
from vt.quantum.entcone.evolution.estimates import RemainderReport as RemainderReport
from vt.quantum.entcone.evolution.estimates import DualityReport as DualityReport
from vt.quantum.entcone.evolution.estimates import weighted_norm as weighted_norm
from vt.quantum.entcone.evolution.estimates import weighted_uniform_bound_check as weighted_uniform_bound_check
from vt.quantum.entcone.evolution.estimates import estimate_chain_check as estimate_chain_check
from vt.quantum.entcone.evolution.estimates import semilocalized_remainder_check as semilocalized_remainder_check
from vt.quantum.entcone.evolution.estimates import trace_norm_duality_check as trace_norm_duality_check
from vt.quantum.entcone.evolution.estimates import adjoint_norm_gap as adjoint_norm_gap
# endregion
