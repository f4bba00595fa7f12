#!/usr/bin/env python3
# coding=utf-8

import math

import numpy as np
import pytest

from vt.quantum.entcone.errors import DomainError, NumericalError
from vt.quantum.entcone.velocity import DispersionLaws, GridSpec, c_mu, check_strip, group_velocity_sup


@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("mu", [0.1, 0.5, 1.0, 2.0])
def test_tight_binding_speed_has_closed_form(tau, mu):
    result = c_mu(DispersionLaws.tight_binding(tau), mu)
    assert result.c_of_mu == pytest.approx(2.0 * tau * math.sinh(mu) / mu, rel=1e-9)
    assert not result.supremum_at_infinity


def test_hypercubic_speed_adds_over_directions():
    chain = c_mu(DispersionLaws.tight_binding(1.0), 0.5).c_of_mu
    cube = c_mu(DispersionLaws.hypercubic(1.0, 3), 0.5).c_of_mu
    assert cube == pytest.approx(3.0 * chain, rel=1e-12)


def test_speed_grows_with_mu():
    law = DispersionLaws.tight_binding(1.0)
    speeds = [c_mu(law, mu).c_of_mu for mu in (0.25, 0.5, 1.0, 2.0)]
    assert speeds == sorted(speeds)


def test_relativistic_speed_is_approached_at_large_momentum():
    result = c_mu(DispersionLaws.relativistic(1.0), 0.5)
    assert 0.95 < result.c_of_mu <= 1.0 + 1e-9
    assert result.supremum_at_infinity


def test_multi_particle_strip_is_the_lightest_mass():
    law = DispersionLaws.multi_particle([2.0, 0.5, 1.0])
    assert law.strip_width == 0.5
    with pytest.raises(DomainError):
        c_mu(law, 0.5)


def test_group_velocity_is_the_small_mu_limit():
    law = DispersionLaws.tight_binding(1.5)
    assert group_velocity_sup(law) == pytest.approx(3.0, rel=1e-9)
    assert c_mu(law, 0.01).c_of_mu == pytest.approx(3.0, rel=1e-4)


def test_custom_law_with_a_pole_reports_where():
    law = DispersionLaws.custom(lambda z: 1.0 / (z - 0.25j), 1.0, k_cutoff=1.0)
    with pytest.raises(NumericalError) as info:
        c_mu(law, 0.5, GridSpec(k_points=5, eta_points=5, refine=False))
    assert info.value.at == pytest.approx(0.25j)


def test_strip_check_of_tight_binding():
    report = check_strip(DispersionLaws.tight_binding(1.0), 1.0)
    assert report.real_on_axis and report.bounded
    assert report.sup_abs_imag[-1] == pytest.approx(2.0 * math.sinh(1.0), rel=1e-3)


@pytest.mark.parametrize("mu", [0.0, -0.5, np.inf])
def test_mu_outside_the_strip(mu):
    with pytest.raises(DomainError, match="mu must lie in"):
        c_mu(DispersionLaws.tight_binding(1.0), mu)
