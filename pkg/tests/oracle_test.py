import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import lpmv

from aimkg.exceptions import TruncationAdvisory, UnboundChannelError, EigenShortfallError, AccuracyError
from aimkg.models import QuantumNumbers, self_consistent_spectrum
from aimkg.oracle import (Grid1D, quadrature, richardson, convergence_ratio, radial_fd_eigen, angular_fd_eigen,
                          angular_grid, associated_legendre, self_consistent_oracle, CELL, NATURAL)
from .utils import COUPLED


def test_grid_geometry():
    vertex = Grid1D(0.0, 1.0, 9)
    assert vertex.step == pytest.approx(0.1)
    assert vertex.points[0] == pytest.approx(0.1)
    assert vertex.refined().n == 19
    assert vertex.refined().step == pytest.approx(0.05)
    cell = Grid1D(0.0, 1.0, 10, CELL, NATURAL)
    assert cell.points[0] == pytest.approx(0.05)
    assert cell.refined().step == pytest.approx(0.05)
    with pytest.raises(ValueError):
        Grid1D(1.0, 0.0, 4)


def test_quadrature():
    assert quadrature(np.sin, 0.0, np.pi) == pytest.approx(2.0, abs=1e-12)
    assert quadrature(lambda x: np.exp(-x), 0.0, np.inf) == pytest.approx(1.0, abs=1e-10)
    assert quadrature(lambda x: x ** 2 * np.exp(-x), 0.0, np.inf, 4) == pytest.approx(2.0, abs=1e-9)


def test_quadrature_reports_non_convergence():
    with pytest.raises(AccuracyError):
        quadrature(lambda x: np.sign(x - 1.0 / 3.0), 0.0, 1.0, max_doublings=2, tol=1e-15)


def test_richardson_removes_second_order_term():
    value, error = richardson(1.0 + 4.0 * 0.01, 1.0 + 0.01)
    assert value == pytest.approx(1.0)
    assert error == pytest.approx(0.01)


def test_hydrogen_radial_levels():
    result = radial_fd_eigen(0.0, 1.0, Grid1D.with_step(0.0, 40.0, 0.01), 2)
    assert result.extrapolated
    assert_allclose(result.eigenvalues, [-1.0, -0.25], atol=1e-4)
    assert len(result.negative) == 2


def test_radial_truncation_advisory():
    with pytest.warns(TruncationAdvisory):
        radial_fd_eigen(0.0, 1.0, Grid1D.with_step(0.0, 5.0, 0.05), 1, extrapolate=False)


def test_eigen_shortfall():
    with pytest.raises(EigenShortfallError):
        radial_fd_eigen(0.0, 1.0, Grid1D(0.0, 40.0, 3), 5, extrapolate=False)


@pytest.mark.parametrize('m,expected', [(0, [0.0, 2.0, 6.0]), (1, [2.0, 6.0, 12.0])])
def test_legendre_separation_constants(m, expected):
    result = angular_fd_eigen(m, 0.0, 0.0, angular_grid(400), 3)
    assert_allclose(result.eigenvalues, expected, atol=1e-3)


def test_unbound_polar_channel():
    with pytest.raises(UnboundChannelError):
        angular_fd_eigen(0, 0.0, 0.5)


def test_small_exponent_advisory():
    with pytest.warns(TruncationAdvisory):
        angular_fd_eigen(0, 0.1, 0.0, angular_grid(100), 1, extrapolate=False)


def test_second_order_convergence():
    solver = lambda h: angular_fd_eigen(0, 0.0, 0.0, Grid1D.with_step(0.0, np.pi, h, CELL, NATURAL), 2,
                                        extrapolate=False).eigenvalues[1]
    assert 3.5 < convergence_ratio(solver, np.pi / 100, 2.0) < 4.5


@pytest.mark.parametrize('ell,m', [(0, 0), (1, 0), (1, 1), (3, 2), (4, 4)])
def test_associated_legendre_matches_scipy(ell, m):
    x = np.linspace(-0.99, 0.99, 23)
    assert_allclose(associated_legendre(ell, m, x), lpmv(m, ell, x), rtol=1e-10, atol=1e-12)


@pytest.mark.slow
def test_self_consistent_oracle_matches_closed_form():
    qn = QuantumNumbers(0, 0, 1)
    energy = self_consistent_oracle(COUPLED, qn)
    assert energy == pytest.approx(self_consistent_spectrum(COUPLED, qn).energy, abs=1e-5)
