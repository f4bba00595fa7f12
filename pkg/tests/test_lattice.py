#!/usr/bin/env python3
# coding=utf-8

import numpy as np
import pytest

from vt.quantum.entcone.errors import DomainError
from vt.quantum.entcone.lattice import LatticeGeometry, Metric, Region, indicator_ab, region_distance


class TestRegions:
    def test_distance_is_zero_only_for_overlapping_regions(self):
        chain = LatticeGeometry.chain(12)
        assert region_distance(chain.span(0, 3), chain.span(3, 5)) == 0.0
        assert region_distance(chain.span(0, 3), chain.span(6, 8)) == 3.0

    def test_distance_is_symmetric_on_a_plane(self):
        plane = LatticeGeometry.box((5, 5))
        a = plane.region_of_sites([(0, 0), (1, 0)])
        b = plane.region_of_sites([(4, 3)])
        assert region_distance(a, b) == region_distance(b, a) == 6.0

    def test_euclidean_metric(self):
        plane = LatticeGeometry.box((4, 4), metric=Metric.EUCLIDEAN)
        a = plane.region_of_sites([(0, 0)])
        b = plane.region_of_sites([(1, 1)])
        assert region_distance(a, b) == pytest.approx(np.sqrt(2.0))

    def test_regions_of_different_lattices_do_not_mix(self):
        with pytest.raises(DomainError, match="different lattices"):
            LatticeGeometry.chain(4).region([0]).union(LatticeGeometry.chain(5).region([0]))

    @pytest.mark.parametrize("text, members", [("3..5", [3, 4, 5]), ("7", [7]), (" 0..1 ", [0, 1])])
    def test_range_parsing(self, text, members):
        assert Region.from_range(LatticeGeometry.chain(10), text).indices.tolist() == members

    def test_empty_range_is_rejected(self):
        with pytest.raises(DomainError, match="is empty"):
            Region.from_range(LatticeGeometry.chain(10), "5..3")


def test_indicators_of_a_partition_sum_to_identity():
    chain = LatticeGeometry.chain(5)
    x = chain.region([1, 3])
    total = indicator_ab(x, 3) + indicator_ab(x.complement(), 3)
    assert np.array_equal(total, np.eye(15))


def test_coordinates_are_floats_on_integer_sites():
    coords = LatticeGeometry.box([2, 3]).coordinates
    assert coords.shape == (6, 2)
    assert coords.dtype == np.float64
    assert np.array_equal(coords, np.round(coords))
