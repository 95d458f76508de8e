import numpy as np
import pytest

from aimkg.exceptions import NotBoundStateError, ConsistencyError, DomainError
from aimkg.models import radial_energy_closed_form
from aimkg.oracle import quadrature
from aimkg.wavefun import (radial_wave, radial_norm_audit, radial_overlap, angular_wave, angular_wave_ab,
                           angular_norm_audit, azimuthal_wave, assemble_psi, count_sign_changes)
from .utils import HYDROGEN_LIKE, COUPLED


def test_ground_state_closed_form():
    # E = 0.6 gives x = 1.6 r and R = 1.6^1.5 / sqrt(2) * r exp(-0.8 r)
    wave = radial_wave(HYDROGEN_LIKE, 0.6, 0.0, 0)
    assert wave.x_scale == pytest.approx(1.6)
    assert wave.value(1.0) == pytest.approx(1.6 ** 1.5 / np.sqrt(2.0) * np.exp(-0.8), rel=1e-10)
    assert wave.norm_numeric ** 2 == pytest.approx(0.8, rel=1e-10)
    assert wave.value(0.0) == 0.0


def test_radial_wave_is_normalized():
    E = radial_energy_closed_form(1.0, 1.0, 0.5, 2)
    wave = radial_wave(HYDROGEN_LIKE, E, 0.5, 2, r_grid=())
    assert quadrature(lambda r: wave.value(r) ** 2, 0.0, np.inf, 8) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize('ell,N', [(0.0, 0), (1.0, 1), (np.sqrt(2.0), 3)])
def test_analytic_radial_constant_is_sqrt2_high(ell, N):
    E = radial_energy_closed_form(1.0, 1.0, ell, N)
    analytic, numeric, ratio = radial_norm_audit(HYDROGEN_LIKE, E, ell, N)
    assert ratio == pytest.approx(np.sqrt(2.0), rel=1e-8)


@pytest.mark.parametrize('m,beta_p,gamma_p', [(0, 0.0, 0.0), (1, 0.0, 0.0), (1, 3.0, 1.0), (2, 2.0, 1.0)])
def test_analytic_polar_constant_matches_quadrature(m, beta_p, gamma_p):
    for n in range(3):
        assert angular_norm_audit(m, beta_p, gamma_p, n)[2] == pytest.approx(1.0, rel=1e-8)


def test_polar_wave_reduces_to_legendre():
    # a = b = 1/2 and n = 0 is P_1^1, proportional to sin(theta)
    wave = angular_wave_ab(0.5, 0.5, 0)
    theta = np.linspace(0.1, np.pi - 0.1, 9)
    ratio = wave.value(theta) / np.sin(theta)
    assert np.ptp(ratio) < 1e-12
    assert abs(ratio[0]) == pytest.approx(np.sqrt(0.75), rel=1e-10)


def test_node_counts():
    E = radial_energy_closed_form(1.0, 1.0, 1.0, 2)
    radial = radial_wave(HYDROGEN_LIKE, E, 1.0, 2)
    assert count_sign_changes([v for _, v in radial.samples]) == 2
    polar = angular_wave_ab(0.5, 1.0, 3)
    assert count_sign_changes([v for _, v in polar.samples]) == 3


def test_overlaps():
    assert radial_overlap(1.0, 1.0, 1, 1) == pytest.approx(1.0, abs=1e-9)
    assert radial_overlap(1.0, 1.0, 0, 2) == pytest.approx(0.0, abs=1e-8)
    u, v = angular_wave_ab(0.5, 1.0, 0, ()), angular_wave_ab(0.5, 1.0, 2, ())
    overlap = quadrature(lambda t: u.value(t) * v.value(t) * np.sin(t), 0.0, np.pi, 8)
    assert overlap == pytest.approx(0.0, abs=1e-9)


def test_bound_state_required():
    with pytest.raises(NotBoundStateError):
        radial_wave(HYDROGEN_LIKE, 1.0, 0.0, 0)
    with pytest.raises(DomainError):
        angular_wave_ab(-0.5, 0.5, 0)


def test_assemble_psi():
    E = 0.9
    channel_m = 1
    polar = angular_wave(channel_m, (E + COUPLED.M) * COUPLED.beta, (E + COUPLED.M) * COUPLED.gamma, 0, ())
    radial = radial_wave(COUPLED, E, polar.ell_eff, 0, ())
    (sample,) = assemble_psi(radial, polar, channel_m, [(1.5, np.pi / 3, 0.4)])
    expected = radial.value(1.5) / 1.5 * polar.value(np.pi / 3) * np.exp(0.4j) / np.sqrt(2 * np.pi)
    assert sample.value == pytest.approx(complex(expected), rel=1e-12)
    with pytest.raises(ConsistencyError):
        assemble_psi(radial, angular_wave_ab(0.5, 0.5, 0, ()), channel_m, [(1.0, 1.0, 0.0)])
    with pytest.raises(ConsistencyError):
        assemble_psi(radial, polar, 2, [(1.0, 1.0, 0.0)])


def test_azimuthal_factor_has_unit_modulus_density():
    phi = np.linspace(0.0, 2 * np.pi, 7)
    assert np.allclose(np.abs(azimuthal_wave(3, phi)) ** 2, 1.0 / (2 * np.pi))


@pytest.mark.parametrize('m,beta_p,gamma_p,n', [(1, 0.2, 0.1, 0), (0, 0.5, 0.2, 2), (2, 1.0, -0.5, 1)])
def test_polar_wave_vanishes_at_the_poles(m, beta_p, gamma_p, n):
    wave = angular_wave(m, beta_p, gamma_p, n)
    assert np.all(np.abs(wave.value(np.array([0.0, np.pi]))) < 1e-12)
