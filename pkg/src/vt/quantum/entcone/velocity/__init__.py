#!/usr/bin/env python3
# coding=utf-8

"""
Light-cone speed ``c(mu)`` of dispersion-law Hamiltonians, group velocities and physical-unit conversions.
"""

# region dispersion laws
from vt.quantum.entcone.velocity.dispersion import BandComponent as BandComponent
from vt.quantum.entcone.velocity.dispersion import DispersionLaw as DispersionLaw
from vt.quantum.entcone.velocity.dispersion import DispersionLaws as DispersionLaws
from vt.quantum.entcone.velocity.dispersion import LawKind as LawKind
from vt.quantum.entcone.velocity.dispersion import StripReport as StripReport
from vt.quantum.entcone.velocity.dispersion import check_strip as check_strip
# endregion

# region speeds
from vt.quantum.entcone.velocity.speed import GridSpec as GridSpec
from vt.quantum.entcone.velocity.speed import VelocityResult as VelocityResult
from vt.quantum.entcone.velocity.speed import c_mu as c_mu
from vt.quantum.entcone.velocity.speed import group_velocity_sup as group_velocity_sup
from vt.quantum.entcone.velocity.speed import physical_velocity as physical_velocity
from vt.quantum.entcone.velocity.speed import cone_radius as cone_radius
# endregion
