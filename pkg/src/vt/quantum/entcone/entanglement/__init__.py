#!/usr/bin/env python3
# coding=utf-8

"""
Localized truncations, Schmidt ranks, partial-transpose witnesses and certified bounds on the distance to the
separable set.
"""

# region localization
from vt.quantum.entcone.entanglement.localize import LocalizedState as LocalizedState
from vt.quantum.entcone.entanglement.localize import SchmidtSpectrum as SchmidtSpectrum
from vt.quantum.entcone.entanglement.localize import localize as localize
from vt.quantum.entcone.entanglement.localize import schmidt_spectrum as schmidt_spectrum
from vt.quantum.entcone.entanglement.localize import schmidt_rank as schmidt_rank
# endregion

# region witnesses
from vt.quantum.entcone.entanglement.witnesses import BipartiteOperator as BipartiteOperator
from vt.quantum.entcone.entanglement.witnesses import SchmidtReport as SchmidtReport
from vt.quantum.entcone.entanglement.witnesses import WitnessValidation as WitnessValidation
from vt.quantum.entcone.entanglement.witnesses import negativity as negativity
from vt.quantum.entcone.entanglement.witnesses import log_negativity as log_negativity
from vt.quantum.entcone.entanglement.witnesses import is_ppt as is_ppt
from vt.quantum.entcone.entanglement.witnesses import schmidt_number_witness as schmidt_number_witness
from vt.quantum.entcone.entanglement.witnesses import validate_witness_inequality as validate_witness_inequality
from vt.quantum.entcone.entanglement.witnesses import local_entanglement as local_entanglement
# endregion

# region separability
from vt.quantum.entcone.entanglement.separable import SeparabilityStatus as SeparabilityStatus
from vt.quantum.entcone.entanglement.separable import SeparabilityVerdict as SeparabilityVerdict
from vt.quantum.entcone.entanglement.separable import separability_lower_bound as separability_lower_bound
from vt.quantum.entcone.entanglement.separable import sep_distance_bounds as sep_distance_bounds
# endregion
