#!/usr/bin/env python3
# coding=utf-8

"""
Entanglement light-cone laboratory for bipartite lattice systems with a localized coupling.

Sub-packages:

* ``lattice`` - finite lattice geometry, regions and distances.
* ``model`` - system A/B Hamiltonians, localized coupling and the assembled bipartite Hamiltonian.
* ``velocity`` - light-cone speed ``c(mu)`` of dispersion laws.
* ``evolution`` - exact von Neumann evolution, Duhamel residuals and propagator leakage.
* ``entanglement`` - localized states, negativity, separability bounds and Schmidt-number witnesses.
* ``lightcone`` - envelope fits and the entanglement light-cone protocols.
* ``harness`` - scenario configuration, sweeps, persistence and the ``entcone`` CLI.
"""
