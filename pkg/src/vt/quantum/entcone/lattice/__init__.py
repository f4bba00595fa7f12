#!/usr/bin/env python3
# coding=utf-8

"""
Finite lattice geometry, regions and distances used by every localization operation.
"""

from vt.quantum.entcone.lattice.geometry import LatticeGeometry as LatticeGeometry
from vt.quantum.entcone.lattice.geometry import Region as Region
from vt.quantum.entcone.lattice.geometry import Metric as Metric
from vt.quantum.entcone.lattice.geometry import Site as Site
from vt.quantum.entcone.lattice.geometry import region_distance as region_distance
from vt.quantum.entcone.lattice.geometry import indicator as indicator
from vt.quantum.entcone.lattice.geometry import indicator_ab as indicator_ab
