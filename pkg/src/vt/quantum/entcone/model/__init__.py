#!/usr/bin/env python3
# coding=utf-8

"""
System A and system B Hamiltonians, localized couplings and the assembled bipartite model.
"""

# region hamiltonians
from vt.quantum.entcone.model.hamiltonians import SystemAHamiltonian as SystemAHamiltonian
from vt.quantum.entcone.model.hamiltonians import SystemBSpec as SystemBSpec
from vt.quantum.entcone.model.hamiltonians import tight_binding as tight_binding
from vt.quantum.entcone.model.hamiltonians import PSD_TOLERANCE as PSD_TOLERANCE
# endregion

# region couplings
from vt.quantum.entcone.model.coupling import CouplingOperator as CouplingOperator
from vt.quantum.entcone.model.coupling import CouplingForm as CouplingForm
from vt.quantum.entcone.model.coupling import Couplings as Couplings
from vt.quantum.entcone.model.coupling import SIGMA_X as SIGMA_X
from vt.quantum.entcone.model.coupling import SIGMA_Y as SIGMA_Y
from vt.quantum.entcone.model.coupling import SIGMA_Z as SIGMA_Z
# endregion

# region bipartite model
from vt.quantum.entcone.model.bipartite import BipartiteModel as BipartiteModel
from vt.quantum.entcone.model.bipartite import ConditionReport as ConditionReport
from vt.quantum.entcone.model.bipartite import LowerBoundReport as LowerBoundReport
from vt.quantum.entcone.model.bipartite import build_model as build_model
from vt.quantum.entcone.model.bipartite import check_condition_4_5 as check_condition_4_5
from vt.quantum.entcone.model.bipartite import lower_bound_check as lower_bound_check
# endregion
