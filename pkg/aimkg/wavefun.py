# -*- coding:utf-8 -*-
"""
Normalized eigenfunctions ``psi(r, theta, phi) = R(r)/r * Theta(theta) * Phi(phi)``.

Normalization is always fixed by quadrature. The closed-form constants are
computed alongside and reported as ``norm_analytic`` so that the two can be
compared:

- radial: ``D^2 = (E+M) alpha (n'-ell-1)! / (n'^2 Gamma(n'+ell+1))``. The
  quadrature constant is smaller by a factor ``sqrt(2)``.
- polar: ``N = [Gamma(ell+a+b+1) Gamma(ell+a-b+1) (2 ell+1) /
  (2 (ell-a-b)! Gamma(ell-a+b+1))]^(1/2) / Gamma(2a+1)``, which agrees with
  quadrature under ``int Theta^2 sin(theta) dtheta = 1``.

"""

from collections import namedtuple

import numpy as np

from .exceptions import NotBoundStateError, ConsistencyError, DomainError
from .models.makarov import angular_exponents
from .oracle import quadrature
from .specfun import laguerre_gen, gauss2f1_poly, log_gamma_fn

TAIL_TOL = 1e-12
NODE_SAMPLES = 2048


class RadialWave(namedtuple('RadialWave', ['n_prime', 'ell', 'kappa', 'norm_analytic', 'norm_numeric', 'samples',
                                           'N', 'x_scale'])):
    """Radial function ``R(r) = norm_numeric * x^(ell+1) exp(-x/2) L_N^(2 ell+1)(x)``, ``x = x_scale * r``.

    ``samples`` is a tuple of ``(r, R(r))`` pairs.
    """
    __slots__ = ()

    def value(self, r):
        return self.norm_numeric * radial_profile(self.ell, self.kappa, self.N, r)

    def over_r(self, r):
        """``R(r) / r``, finite at ``r = 0``."""
        x = self.x_scale * np.asarray(r, dtype=float)
        shape = np.power(x, self.ell) * np.exp(-x / 2.0) * laguerre_gen(self.N, 2 * self.ell + 1, x)
        return self.norm_numeric * self.x_scale * shape


class AngularWave(namedtuple('AngularWave', ['a', 'b', 'n', 'ell_eff', 'norm_analytic', 'norm_numeric', 'samples',
                                             'm_abs'])):
    """Polar function ``Theta = norm_numeric * y^a (1-y)^b 2F1(-n, a+b+ell+1; 2a+1; y)``, ``y = (1 + cos theta)/2``."""
    __slots__ = ()

    def value(self, theta):
        return self.norm_numeric * angular_profile(self.a, self.b, self.n, theta)


class PsiSample(namedtuple('PsiSample', ['r', 'theta', 'phi', 'value'])):
    __slots__ = ()


def radial_profile(ell, kappa, N, r):
    """Unnormalized ``x^(ell+1) exp(-x/2) L_N^(2 ell+1)(x)`` with ``x = 2 kappa r``."""
    x = 2.0 * kappa * np.asarray(r, dtype=float)
    with np.errstate(divide='ignore'):
        envelope = np.where(x > 0, np.exp((ell + 1.0) * np.log(np.where(x > 0, x, 1.0)) - x / 2.0), 0.0)
    return envelope * laguerre_gen(N, 2 * ell + 1, x)


def angular_profile(a, b, n, theta):
    """Unnormalized ``y^a (1-y)^b 2F1(-n, a+b+ell+1; 2a+1; y)`` with ``ell = a + b + n``."""
    y = (1.0 + np.cos(np.asarray(theta, dtype=float))) / 2.0
    ell = a + b + n
    return np.power(y, a) * np.power(1.0 - y, b) * gauss2f1_poly(n, a + b + ell + 1, 2 * a + 1, y)


def _radial_scale(params, E, ell, N):
    if not abs(E) < params.M:
        raise NotBoundStateError(E, params.M)
    if ell < 0:
        raise DomainError("ell must be >= 0, got {0!r}".format(ell))
    n_prime = N + ell + 1.0
    return n_prime, (E + params.M) * params.alpha / n_prime


def radial_extent(ell, kappa, N):
    """Starting truncation radius ``(ell + n' + 10 sqrt(n')) / kappa``."""
    n_prime = N + ell + 1.0
    return (ell + n_prime + 10.0 * np.sqrt(n_prime)) / kappa


def _norm_integral(f, r_max, panels):
    total = quadrature(f, 0.0, r_max, panels)
    while True:
        tail = quadrature(f, r_max, 2.0 * r_max, panels)
        total += tail
        if abs(tail) <= TAIL_TOL * abs(total):
            return total
        r_max *= 2.0


def radial_norm_analytic(params, E, ell, N):
    """Closed-form constant ``D`` from the Laguerre orthogonality relation."""
    n_prime = N + ell + 1.0
    log_d2 = np.log((E + params.M) * params.alpha) + log_gamma_fn(N + 1) - 2.0 * np.log(n_prime) - \
        log_gamma_fn(n_prime + ell + 1)
    return float(np.exp(0.5 * log_d2))


def radial_wave(params, E, ell, N, r_grid=None):
    """Radial function normalized so that ``int_0^inf R^2 dr = 1``.

    :param params: ModelParams.
    :param E: bound-state energy, ``|E| < M``.
    :param ell: centrifugal index.
    :param N: radial quantum number.
    :param r_grid: sample points, default 2048 points on ``[0, r_max]``.
    :return: RadialWave.
    """
    n_prime, x_scale = _radial_scale(params, E, ell, N)
    kappa = x_scale / 2.0
    shape = lambda r: radial_profile(ell, kappa, N, r) ** 2
    integral = _norm_integral(shape, radial_extent(ell, kappa, N), 8 + 2 * N)
    norm = 1.0 / np.sqrt(integral)
    if r_grid is None:
        r_grid = np.linspace(0.0, radial_extent(ell, kappa, N), NODE_SAMPLES)
    r_grid = np.asarray(r_grid, dtype=float)
    values = norm * radial_profile(ell, kappa, N, r_grid)
    return RadialWave(n_prime, ell, kappa, radial_norm_analytic(params, E, ell, N), norm,
                      tuple(zip(r_grid.tolist(), values.tolist())), N, x_scale)


def radial_norm_audit(params, E, ell, N):
    """:return: tuple ``(analytic, numeric, analytic / numeric)``."""
    wave = radial_wave(params, E, ell, N, r_grid=())
    return wave.norm_analytic, wave.norm_numeric, wave.norm_analytic / wave.norm_numeric


def radial_overlap(ell, s, N, N2):
    """``int_0^inf R_N R_N2 dr`` for unit-norm states of one radial operator.

    Both states use the Coulomb strength ``s`` with ``kappa_N = s / (ell + 1 + N)``,
    so they are eigenfunctions of the same Sturm-Liouville problem.
    """
    kappas = [s / (ell + 1.0 + k) for k in (N, N2)]
    norms = []
    for kappa, k in zip(kappas, (N, N2)):
        norms.append(1.0 / np.sqrt(_norm_integral(lambda r: radial_profile(ell, kappa, k, r) ** 2,
                                                  radial_extent(ell, kappa, k), 8 + 2 * k)))
    product = lambda r: radial_profile(ell, kappas[0], N, r) * radial_profile(ell, kappas[1], N2, r)
    r_max = max(radial_extent(ell, kappas[0], N), radial_extent(ell, kappas[1], N2))
    return norms[0] * norms[1] * _norm_integral(product, r_max, 8 + 2 * max(N, N2))


def angular_norm_analytic(a, b, n):
    ell = a + b + n
    log_n2 = log_gamma_fn(ell + a + b + 1) + log_gamma_fn(ell + a - b + 1) + np.log(2 * ell + 1) - \
        np.log(2.0) - log_gamma_fn(n + 1) - log_gamma_fn(ell - a + b + 1)
    return float(np.exp(0.5 * log_n2 - log_gamma_fn(2 * a + 1)))


def angular_wave_ab(a, b, n, theta_grid=None, m_abs=None):
    """Polar function for given boundary exponents, normalized so that ``int Theta^2 sin dtheta = 1``."""
    if a < 0 or b < 0:
        raise DomainError("a and b must be >= 0, got a={0!r} b={1!r}".format(a, b))
    weight = lambda t: angular_profile(a, b, n, t) ** 2 * np.sin(t)
    norm = 1.0 / np.sqrt(quadrature(weight, 0.0, np.pi, 4 + 2 * n))
    if theta_grid is None:
        theta_grid = np.linspace(0.0, np.pi, NODE_SAMPLES)
    theta_grid = np.asarray(theta_grid, dtype=float)
    values = norm * angular_profile(a, b, n, theta_grid)
    return AngularWave(a, b, n, a + b + n, angular_norm_analytic(a, b, n), norm,
                       tuple(zip(theta_grid.tolist(), values.tolist())), m_abs)


def angular_wave(m, beta_p, gamma_p, n, theta_grid=None):
    """Polar function of channel ``(m, beta', gamma')``; unbound channels raise."""
    a, b = angular_exponents(m, beta_p, gamma_p)
    return angular_wave_ab(a, b, n, theta_grid, abs(m))


def angular_norm_audit(m, beta_p, gamma_p, n):
    """:return: tuple ``(analytic, numeric, analytic / numeric)``."""
    wave = angular_wave(m, beta_p, gamma_p, n, theta_grid=())
    return wave.norm_analytic, wave.norm_numeric, wave.norm_analytic / wave.norm_numeric


def azimuthal_wave(m, phi_grid):
    """``exp(i m phi) / sqrt(2 pi)`` as a complex array."""
    phi = np.asarray(phi_grid, dtype=float)
    return np.exp(1j * m * phi) / np.sqrt(2.0 * np.pi)


def assemble_psi(radial, angular, m, points):
    """Sample ``psi`` at ``(r, theta, phi)`` triples.

    :return: list of PsiSample.
    """
    if abs(radial.ell - angular.ell_eff) > 1e-10:
        raise ConsistencyError("radial ell = {0!r} differs from polar ell = {1!r}".format(radial.ell, angular.ell_eff))
    if angular.m_abs is not None and angular.m_abs != abs(m):
        raise ConsistencyError("polar state was built for |m| = {0}, got m = {1}".format(angular.m_abs, m))
    out = []
    for r, theta, phi in points:
        value = complex(radial.over_r(r) * angular.value(theta) * azimuthal_wave(m, phi))
        out.append(PsiSample(r, theta, phi, value))
    return out


def count_sign_changes(values):
    """Number of sign changes, ignoring exact zeros."""
    values = np.asarray(values, dtype=float)
    signs = np.sign(values[values != 0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
