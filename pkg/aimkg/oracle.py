# -*- coding:utf-8 -*-
"""
Independent numerical checks: finite-difference eigensolvers for the radial
and polar equations, composite Gauss-Legendre quadrature, and the associated
Legendre recurrence.

Nothing here imports the AIM engine, the special functions or the closed-form
model; the only shared module is the error hierarchy.

"""

import logging
import warnings
from collections import namedtuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import bisect

from .exceptions import AccuracyError, EigenShortfallError, NoBoundStateError, UnboundChannelError, \
    TruncationAdvisory

VERTEX = "vertex"
CELL = "cell"
DIRICHLET = "dirichlet"
NATURAL = "natural"

GAUSS_NODES = 16
TAIL_LIMIT = 1e-8

logger = logging.getLogger(__name__)

_NODES, _WEIGHTS = leggauss(GAUSS_NODES)


class Grid1D(namedtuple('Grid1D', ['lo', 'hi', 'n', 'centering', 'boundary'])):
    """Uniform grid with ``n`` unknowns on ``[lo, hi]``.

    ``"vertex"`` grids hold the interior points ``lo + i h``, ``i = 1..n`` with
    ``h = (hi - lo) / (n + 1)``; ``"cell"`` grids hold the centres
    ``lo + (i + 1/2) h`` with ``h = (hi - lo) / n``.
    """
    __slots__ = ()

    def __new__(cls, lo, hi, n, centering=VERTEX, boundary=DIRICHLET):
        if centering not in (VERTEX, CELL):
            raise ValueError("centering must be 'vertex' or 'cell', got {0!r}".format(centering))
        if not hi > lo or n < 1:
            raise ValueError("grid needs hi > lo and n >= 1, got [{0}, {1}] with n={2}".format(lo, hi, n))
        return super(Grid1D, cls).__new__(cls, float(lo), float(hi), int(n), centering, boundary)

    @property
    def step(self):
        if self.centering == VERTEX:
            return (self.hi - self.lo) / (self.n + 1)
        return (self.hi - self.lo) / self.n

    @property
    def points(self):
        if self.centering == VERTEX:
            return self.lo + self.step * np.arange(1, self.n + 1)
        return self.lo + self.step * (np.arange(self.n) + 0.5)

    def refined(self):
        """Same interval with half the step."""
        n = 2 * self.n + 1 if self.centering == VERTEX else 2 * self.n
        return Grid1D(self.lo, self.hi, n, self.centering, self.boundary)

    @classmethod
    def with_step(cls, lo, hi, h, centering=VERTEX, boundary=DIRICHLET):
        n = int(round((hi - lo) / h)) - (1 if centering == VERTEX else 0)
        return cls(lo, hi, max(n, 1), centering, boundary)


class EigenResult(namedtuple('EigenResult', ['eigenvalues', 'grid', 'extrapolated', 'errors'])):
    """Sorted eigenvalues with per-eigenvalue discretization error estimates."""
    __slots__ = ()

    @property
    def negative(self):
        return self.eigenvalues[self.eigenvalues < 0]


def richardson(coarse, fine, order=2):
    """Extrapolate a pair computed at ``h`` and ``h/2``.

    :return: tuple ``(value, error)`` with ``error = |coarse - fine| / (2**order - 1)``.
    """
    coarse = np.asarray(coarse, dtype=float)
    fine = np.asarray(fine, dtype=float)
    factor = 2.0 ** order
    return (factor * fine - coarse) / (factor - 1.0), np.abs(coarse - fine) / (factor - 1.0)


def convergence_ratio(solver, h, exact):
    """``|solver(h) - exact| / |solver(h/2) - exact|``; about 4 for a second-order scheme."""
    return abs(solver(h) - exact) / abs(solver(h / 2.0) - exact)


def _panel_sum(f, lo, hi, panels):
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    return float(np.sum(half[:, None] * _WEIGHTS[None, :] * f(x)))


def quadrature(f, lo, hi, panels=1, tol=1e-12, max_doublings=20):
    """Composite 16-node Gauss-Legendre quadrature with panel doubling.

    ``f`` must accept numpy arrays. An infinite upper limit is mapped to
    ``[0, 1)`` with ``x = lo + t / (1 - t)``.

    :param panels: initial panel count.
    :param tol: stop when two successive estimates differ by at most ``tol * max(1, |I|)``.
    :return: float.
    """
    if np.isinf(hi):
        g = lambda t: f(lo + t / (1.0 - t)) / (1.0 - t) ** 2
        return quadrature(g, 0.0, 1.0, panels, tol, max_doublings)
    previous = _panel_sum(f, lo, hi, panels)
    older = previous
    for _ in range(max_doublings):
        panels *= 2
        current = _panel_sum(f, lo, hi, panels)
        if abs(current - previous) <= tol * max(1.0, abs(current)):
            return current
        older, previous = previous, current
    raise AccuracyError(older, previous)


def _lowest(diag, offdiag, count):
    if diag.size < count:
        raise EigenShortfallError(count, diag.size)
    return eigh_tridiagonal(diag, offdiag, eigvals_only=True, select='i', select_range=(0, count - 1))


def _radial_eigenvalues(ell, s, grid, count):
    r = grid.points
    h = grid.step
    diag = 2.0 / h ** 2 + ell * (ell + 1) / r ** 2 - 2.0 * s / r
    offdiag = np.full(grid.n - 1, -1.0 / h ** 2)
    return _lowest(diag, offdiag, count)


def radial_tail(ell, s, r_max):
    """Ground-state envelope ``(2 kappa r)^(ell+1) exp(-kappa r)`` at ``r_max`` with ``kappa = s / (ell + 1)``."""
    kappa = s / (ell + 1.0)
    x = 2.0 * kappa * r_max
    return np.exp((ell + 1.0) * np.log(x) - kappa * r_max) if x > 0 else 0.0


def radial_grid(r_max, h=1e-3):
    return Grid1D.with_step(0.0, r_max, h)


def radial_fd_eigen(ell, s, grid, count, extrapolate=True):
    """Lowest ``count`` eigenvalues ``k^2`` of ``-R'' + (ell(ell+1)/r^2 - 2s/r) R = k^2 R``, ``R(0) = R(r_max) = 0``.

    Second-order central differences on a vertex grid; with ``extrapolate`` the
    grid is refined once and one Richardson step is taken.

    :param ell: centrifugal index, >= 0.
    :param s: Coulomb strength, >= 0.
    :param grid: vertex Grid1D on ``[0, r_max]``.
    :param count: number of eigenvalues.
    :return: EigenResult.
    """
    if ell < 0 or s < 0:
        raise ValueError("radial_fd_eigen needs ell >= 0 and s >= 0, got ell={0} s={1}".format(ell, s))
    if s > 0 and radial_tail(ell, s, grid.hi) > TAIL_LIMIT:
        warnings.warn("r_max = {0} truncates the ground state (tail {1:.3g} > {2})".format(
            grid.hi, radial_tail(ell, s, grid.hi), TAIL_LIMIT), TruncationAdvisory)
    coarse = _radial_eigenvalues(ell, s, grid, count)
    if not extrapolate:
        return EigenResult(coarse, grid, False, np.full(count, np.nan))
    fine = _radial_eigenvalues(ell, s, grid.refined(), count)
    values, errors = richardson(coarse, fine)
    return EigenResult(values, grid, True, errors)


def angular_grid(n=2000):
    return Grid1D(0.0, np.pi, n, CELL, NATURAL)


def _angular_eigenvalues(m, beta_p, gamma_p, grid, count):
    theta = grid.points
    h = grid.step
    faces = np.sin(grid.lo + h * np.arange(grid.n + 1))
    faces[0] = faces[-1] = 0.0
    sin_c = np.sin(theta)
    weight = m * m + beta_p + gamma_p * np.cos(theta)
    a_diag = (faces[:-1] + faces[1:]) / h ** 2 + weight / sin_c
    a_off = -faces[1:-1] / h ** 2
    diag = a_diag / sin_c
    offdiag = a_off / np.sqrt(sin_c[:-1] * sin_c[1:])
    return _lowest(diag, offdiag, count)


def angular_fd_eigen(m, beta_p, gamma_p, grid=None, count=4, extrapolate=True):
    """Lowest ``count`` separation constants ``lambda`` of the polar equation

        -(1/sin) (sin Theta')' + (m^2 + beta' + gamma' cos) / sin^2 Theta = lambda Theta.

    Finite volumes on cell centres of ``(0, pi)`` with zero flux through the
    poles; the weighted problem is symmetrized with ``u = Theta sqrt(sin)``.

    :param grid: cell Grid1D on ``[0, pi]``, default 2000 cells.
    :return: EigenResult.
    """
    grid = angular_grid() if grid is None else grid
    q = m * m + beta_p
    if q - abs(gamma_p) < 0:
        raise UnboundChannelError("m^2 + beta' - |gamma'|", q - abs(gamma_p))
    for name, radicand in (("a", q - gamma_p), ("b", q + gamma_p)):
        exponent = np.sqrt(radicand) / 2.0
        if 0 < exponent < 0.25:
            warnings.warn("boundary exponent {0} = {1:.3g} < 1/4: finite differences converge slowly".format(
                name, exponent), TruncationAdvisory)
    coarse = _angular_eigenvalues(m, beta_p, gamma_p, grid, count)
    if not extrapolate:
        return EigenResult(coarse, grid, False, np.full(count, np.nan))
    fine = _angular_eigenvalues(m, beta_p, gamma_p, grid.refined(), count)
    values, errors = richardson(coarse, fine)
    return EigenResult(values, grid, True, errors)


def associated_legendre(ell, m, x):
    """``P_ell^m(x)`` with the Condon-Shortley phase, integer ``0 <= m <= ell``."""
    if not 0 <= m <= ell:
        raise ValueError("need 0 <= m <= ell, got ell={0} m={1}".format(ell, m))
    x = np.asarray(x, dtype=float)
    pmm = np.ones_like(x)
    if m > 0:
        root = np.sqrt((1.0 - x) * (1.0 + x))
        fact = 1.0
        for _ in range(m):
            pmm = -pmm * fact * root
            fact += 2.0
    if ell == m:
        return pmm
    pmm1 = x * (2 * m + 1) * pmm
    for l in range(m + 2, ell + 1):
        pmm, pmm1 = pmm1, (x * (2 * l - 1) * pmm1 - (l + m - 1) * pmm) / (l - m)
    return pmm1


def _oracle_defect(params, qn, E, radial_points, angular_cells):
    M = params.M
    beta_p = (E + M) * params.beta
    gamma_p = (E + M) * params.gamma
    try:
        lam = angular_fd_eigen(qn.m, beta_p, gamma_p, angular_grid(angular_cells), qn.n + 1).eigenvalues[qn.n]
    except UnboundChannelError as e:
        raise e.at_energy(E)
    ell = max((-1.0 + np.sqrt(1.0 + 4.0 * lam)) / 2.0, 0.0)
    s = (E + M) * params.alpha / 2.0
    n_prime = ell + 1.0 + qn.N
    kappa_est = s / n_prime
    r_max = (n_prime + 10.0 * np.sqrt(n_prime) + 20.0) / kappa_est
    grid = Grid1D(0.0, r_max, radial_points)
    k2 = radial_fd_eigen(ell, s, grid, qn.N + 1).eigenvalues[qn.N]
    return k2 - (E * E - M * M)


def self_consistent_oracle(params, qn, scan=64, radial_points=4000, angular_cells=400, xtol=1e-8):
    """Energy of state ``qn`` from finite differences alone.

    For a trial ``E`` the polar problem gives ``lambda_n``, hence ``ell``; the
    radial problem at ``s(E)`` gives ``k^2_N(E)``. The root of
    ``k^2_N(E) - (E^2 - M^2)`` is bracketed on a scan upward from ``-0.98 M``
    and refined by bisection.

    :return: float energy.
    """
    M = params.M
    f = lambda E: _oracle_defect(params, qn, E, radial_points, angular_cells)
    grid = np.linspace(-M + 0.02 * M, M - 1e-6 * M, scan + 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationAdvisory)
        lo, f_lo = grid[0], f(grid[0])
        for E in grid[1:]:
            f_hi = f(E)
            if f_lo == 0.0:
                return lo
            if f_lo * f_hi < 0:
                root = bisect(f, lo, E, xtol=xtol * M, maxiter=200)
                logger.debug("oracle qn={0}: E = {1!r}".format(tuple(qn), root))
                return root
            lo, f_lo = E, f_hi
    raise NoBoundStateError("oracle found no bound state for qn {0}".format(tuple(qn)))
