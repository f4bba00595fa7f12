#!/usr/bin/env python3
# coding=utf-8

"""
Finite lattice geometry on Z^n: ordered site lists, regions, indicator projections and region distances.

Boundaries are open. The site ordering is fixed at construction and defines the matrix index of every site.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property
from typing import final

import numpy as np

from vt.quantum.entcone.errors import DomainError

type Site = tuple[int, ...]


class Metric(StrEnum):
    """
    Distance on Z^n used for ``d_XY``.
    """

    L1 = "l1"
    EUCLIDEAN = "euclidean"


@final
@dataclass(frozen=True)
class LatticeGeometry:
    """
    Ordered finite set of sites of Z^n with open boundaries.

    >>> chain = LatticeGeometry.chain(5)
    >>> chain.size, chain.dimension
    (5, 1)

    Duplicate sites are rejected:

    >>> LatticeGeometry(1, ((0,), (0,)))
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: lattice sites must be unique.
    """

    dimension: int
    sites: tuple[Site, ...]
    metric: Metric = Metric.L1

    def __post_init__(self):
        if self.dimension < 1:
            raise DomainError(f"dimension must be >= 1, got {self.dimension}.")
        if len(self.sites) < 2:
            raise DomainError(f"a lattice needs at least 2 sites, got {len(self.sites)}.")
        if any(len(s) != self.dimension for s in self.sites):
            raise DomainError(f"every site must have {self.dimension} coordinates.")
        if len(set(self.sites)) != len(self.sites):
            raise DomainError("lattice sites must be unique.")

    # region constructors
    @classmethod
    def chain(cls, length: int) -> LatticeGeometry:
        """
        One-dimensional open chain ``0, 1, ..., length - 1``.
        """
        return cls(1, tuple((x,) for x in range(length)))

    @classmethod
    def box(cls, shape: Sequence[int], metric: Metric = Metric.L1) -> LatticeGeometry:
        """
        Rectangular box of Z^n in row-major order.

        >>> LatticeGeometry.box((2, 3)).sites[:4]
        ((0, 0), (0, 1), (0, 2), (1, 0))
        """
        sites = tuple(itertools.product(*(range(n) for n in shape)))
        return cls(len(shape), sites, metric)

    # endregion

    @property
    def size(self) -> int:
        """
        :return: number of sites ``L``.
        """
        return len(self.sites)

    @cached_property
    def coordinates(self) -> np.ndarray:
        """
        :return: ``(L, n)`` float array of the integer site coordinates.
        """
        return np.asarray(self.sites, dtype=float)

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """
        Pairwise site distances in the lattice metric.

        >>> LatticeGeometry.chain(3).distance_matrix[0].tolist()
        [0.0, 1.0, 2.0]
        """
        diff = self.coordinates[:, None, :] - self.coordinates[None, :, :]
        if self.metric is Metric.EUCLIDEAN:
            return np.sqrt(np.sum(diff**2, axis=-1))
        return np.sum(np.abs(diff), axis=-1)

    def index_of(self, site: Site) -> int:
        """
        >>> LatticeGeometry.box((2, 2)).index_of((1, 0))
        2
        """
        try:
            return self._index[tuple(site)]
        except KeyError:
            raise DomainError(f"site {site} is not part of the lattice.") from None

    @cached_property
    def _index(self) -> dict[Site, int]:
        return {s: i for i, s in enumerate(self.sites)}

    # region region factories
    def region(self, members: Iterable[int]) -> Region:
        """
        :param members: site indices.
        :return: the region of this lattice containing ``members``.
        """
        return Region(self, frozenset(int(m) for m in members))

    def region_of_sites(self, sites: Iterable[Site]) -> Region:
        """
        Region from coordinate tuples instead of indices.
        """
        return self.region(self.index_of(s) for s in sites)

    def span(self, first: int, last: int) -> Region:
        """
        Inclusive index range.

        >>> sorted(LatticeGeometry.chain(8).span(2, 4).members)
        [2, 3, 4]
        """
        return self.region(range(first, last + 1))

    def full(self) -> Region:
        return self.region(range(self.size))

    # endregion


@final
@dataclass(frozen=True)
class Region:
    """
    Subset of the sites of a lattice, stored as site indices.

    >>> chain = LatticeGeometry.chain(6)
    >>> x = chain.span(0, 2)
    >>> sorted(x.complement().members)
    [3, 4, 5]
    >>> x.complement().complement() == x
    True

    Members must belong to the parent lattice:

    >>> chain.region([7])
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: region members [7] are outside a lattice of 6 sites.
    """

    parent: LatticeGeometry = field(repr=False)
    members: frozenset[int]

    def __post_init__(self):
        outside = sorted(m for m in self.members if not 0 <= m < self.parent.size)
        if outside:
            raise DomainError(
                f"region members {outside} are outside a lattice of {self.parent.size} sites."
            )

    @classmethod
    def from_range(cls, parent: LatticeGeometry, text: str) -> Region:
        """
        Parse the inclusive range form used in scenario files.

        >>> sorted(Region.from_range(LatticeGeometry.chain(24), "16..19").members)
        [16, 17, 18, 19]
        >>> sorted(Region.from_range(LatticeGeometry.chain(24), "5").members)
        [5]
        >>> Region.from_range(LatticeGeometry.chain(24), "7..x")
        Traceback (most recent call last):
        vt.quantum.entcone.errors.DomainError: region range must look like 'a..b', got '7..x'.
        """
        first, sep, last = text.strip().partition("..")
        try:
            lo = int(first)
            hi = int(last) if sep else lo
        except ValueError:
            raise DomainError(f"region range must look like 'a..b', got '{text}'.") from None
        if hi < lo:
            raise DomainError(f"region range {text} is empty.")
        return parent.span(lo, hi)

    @cached_property
    def indices(self) -> np.ndarray:
        """
        :return: sorted member indices.
        """
        return np.array(sorted(self.members), dtype=int)

    @property
    def is_empty(self) -> bool:
        return not self.members

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, site_index: object) -> bool:
        return site_index in self.members

    def complement(self) -> Region:
        return Region(self.parent, frozenset(range(self.parent.size)) - self.members)

    def union(self, other: Region) -> Region:
        _same_parent(self, other)
        return Region(self.parent, self.members | other.members)

    def intersects(self, other: Region) -> bool:
        _same_parent(self, other)
        return bool(self.members & other.members)

    def issuperset(self, other: Region) -> bool:
        _same_parent(self, other)
        return self.members >= other.members

    @property
    def label(self) -> str:
        """
        Compact human label: contiguous index runs joined by commas.

        >>> LatticeGeometry.chain(10).region([0, 1, 2, 5, 7, 8]).label
        '0..2,5,7..8'
        >>> LatticeGeometry.chain(3).region([]).label
        '{}'
        """
        if self.is_empty:
            return "{}"
        runs: list[str] = []
        idx = self.indices.tolist()
        start = prev = idx[0]
        for i in idx[1:] + [None]:
            if i is not None and i == prev + 1:
                prev = i
                continue
            runs.append(str(start) if start == prev else f"{start}..{prev}")
            if i is not None:
                start = prev = i
        return ",".join(runs)


def _same_parent(a: Region, b: Region) -> None:
    if a.parent != b.parent:
        raise DomainError("regions belong to different lattices.")


def region_distance(a: Region, b: Region) -> float:
    """
    Distance ``d_XY`` between two regions: the minimum site-to-site distance in the lattice metric.

    >>> chain = LatticeGeometry.chain(10)
    >>> region_distance(chain.region([0]), chain.region([5]))
    5.0
    >>> region_distance(chain.span(0, 3), chain.span(2, 6))
    0.0

    >>> plane = LatticeGeometry.box((4, 5), metric=Metric.EUCLIDEAN)
    >>> region_distance(plane.region_of_sites([(0, 0)]), plane.region_of_sites([(3, 4)]))
    5.0

    Empty regions have no distance:

    >>> region_distance(chain.region([]), chain.region([1]))
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: region distance needs two nonempty regions.

    :param a: nonempty region.
    :param b: nonempty region of the same lattice.
    :return: ``min_{x in a, y in b} |x - y|``; zero iff the regions intersect.
    :raises DomainError: on empty regions or regions of different lattices.
    """
    if a.is_empty or b.is_empty:
        raise DomainError("region distance needs two nonempty regions.")
    _same_parent(a, b)
    return float(np.min(a.parent.distance_matrix[np.ix_(a.indices, b.indices)]))


def indicator(r: Region) -> np.ndarray:
    """
    Characteristic function ``chi_X`` of a region as a diagonal 0/1 matrix on the A-space.

    >>> chain = LatticeGeometry.chain(3)
    >>> indicator(chain.region([1])).diagonal().tolist()
    [0.0, 1.0, 0.0]
    >>> assert np.array_equal(indicator(chain.full()), np.eye(3))
    >>> p = indicator(chain.region([0, 2]))
    >>> assert np.array_equal(p @ p, p)
    >>> assert np.array_equal(p + indicator(chain.region([0, 2]).complement()), np.eye(3))
    """
    diag = np.zeros(r.parent.size)
    diag[r.indices] = 1.0
    return np.diag(diag)


def indicator_ab(r: Region, d_b: int) -> np.ndarray:
    """
    ``chi_X (x) 1_B`` on the tensor-product space.

    >>> indicator_ab(LatticeGeometry.chain(2).region([1]), 2).diagonal().tolist()
    [0.0, 0.0, 1.0, 1.0]
    """
    return np.kron(indicator(r), np.eye(d_b))
