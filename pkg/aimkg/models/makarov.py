# -*- coding:utf-8 -*-
"""
Klein-Gordon bound states in the Makarov potential

    V(r, theta) = -alpha / r + (beta + gamma * cos(theta)) / (r**2 * sin(theta)**2)

with the coupling entering as ``(E + M) V`` (natural units). Separation gives a
Coulomb-like radial channel with centrifugal index ``ell`` and a polar channel
whose exponents ``a, b`` depend on ``beta' = (E + M) beta`` and
``gamma' = (E + M) gamma``. Since ``ell`` depends on ``E`` through ``beta'`` and
``gamma'``, the spectrum is the solution of a one-dimensional equation in ``E``.

"""

import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from ..aim import AimProblem, collapsed_roots
from ..exceptions import DomainError, UnboundChannelError, NoBoundStateError, NotBoundStateError, AimkgError
from ..polyfield import EXACT, FLOAT, Poly, ParamPoly, RatFunc, as_scalar
from ..specfun import gauss2f1_coefficients

CLOSED_FORM = "closed_form"
AIM = "aim"
ORACLE = "oracle"
SOURCES = (CLOSED_FORM, AIM, ORACLE)

SCAN_INTERVALS = 512

logger = logging.getLogger(__name__)


class ModelParams(namedtuple('ModelParams', ['alpha', 'beta', 'gamma', 'M'])):
    """Couplings and mass.

    :param alpha: Coulomb strength, > 0.
    :param beta: ring-shape strength, >= 0.
    :param gamma: angular asymmetry strength.
    :param M: particle mass, > 0.
    """
    __slots__ = ()

    def __new__(cls, alpha=1.0, beta=0.0, gamma=0.0, M=1.0):
        problems = cls.problems(alpha, beta, gamma, M)
        if problems:
            raise DomainError("; ".join(problems))
        return super(ModelParams, cls).__new__(cls, float(alpha), float(beta), float(gamma), float(M))

    @staticmethod
    def problems(alpha, beta, gamma, M):
        out = []
        if not alpha > 0:
            out.append("alpha must be > 0, got {0!r}".format(alpha))
        if not beta >= 0:
            out.append("beta must be >= 0, got {0!r}".format(beta))
        if not np.isfinite(gamma):
            out.append("gamma must be finite, got {0!r}".format(gamma))
        if not M > 0:
            out.append("M must be > 0, got {0!r}".format(M))
        return out


class QuantumNumbers(namedtuple('QuantumNumbers', ['N', 'n', 'm'])):
    """Radial ``N``, polar ``n`` and azimuthal ``m`` quantum numbers."""
    __slots__ = ()

    def __new__(cls, N=0, n=0, m=0):
        if int(N) != N or int(n) != n or int(m) != m:
            raise DomainError("quantum numbers must be integers, got N={0!r} n={1!r} m={2!r}".format(N, n, m))
        if N < 0 or n < 0:
            raise DomainError("N and n must be >= 0, got N={0} n={1}".format(N, n))
        return super(QuantumNumbers, cls).__new__(cls, int(N), int(n), int(m))

    @property
    def m_abs(self):
        return abs(self.m)

    def n_prime(self, ell):
        """Principal index ``N + ell + 1``."""
        return self.N + ell + 1


class RadialChannel(namedtuple('RadialChannel', ['ell', 's', 'k2', 'kappa', 'x_scale', 'N'])):
    """``s = (E+M) alpha / 2``, ``k2 = E**2 - M**2``, ``kappa = sqrt(-k2)``, ``x = x_scale * r``."""
    __slots__ = ()

    @property
    def n_prime(self):
        return self.N + self.ell + 1

    @property
    def bound(self):
        return self.k2 < 0


class AngularChannel(namedtuple('AngularChannel', ['beta_p', 'gamma_p', 'a', 'b', 'm_abs'])):
    __slots__ = ()


class SpectrumEntry(namedtuple('SpectrumEntry', ['qn', 'energy', 'ell_eff', 'residual', 'source',
                                                 'multiplicity', 'roots'])):
    """One bound state.

    :param qn: QuantumNumbers.
    :param energy: energy in ``(-M, M)``.
    :param ell_eff: effective centrifugal index at ``energy``.
    :param residual: ``|E - RHS(E)|`` of the self-consistency equation.
    :param source: one of ``"closed_form"``, ``"aim"``, ``"oracle"``.
    :param multiplicity: number of self-consistent roots found for ``qn``.
    :param roots: all self-consistent energies, ascending.
    """
    __slots__ = ()

    def __new__(cls, qn, energy, ell_eff, residual=0.0, source=CLOSED_FORM, multiplicity=1, roots=None):
        if source not in SOURCES:
            raise ValueError("source must be one of {0}, got {1!r}".format(SOURCES, source))
        roots = (energy,) if roots is None else tuple(roots)
        return super(SpectrumEntry, cls).__new__(cls, qn, energy, ell_eff, residual, source, multiplicity, roots)


Spectrum = namedtuple('Spectrum', ['entries', 'errors'])


def makarov_potential(params, r, theta):
    """``V(r, theta)``; vectorized over numpy arrays."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    sin2 = np.sin(theta) ** 2
    return -params.alpha / r + (params.beta + params.gamma * np.cos(theta)) / (r ** 2 * sin2)


def separation_constants(ell):
    """``lambda = ell (ell + 1)``."""
    return ell * (ell + 1)


def ell_from_t(t):
    """Nonnegative ``ell`` with ``ell (ell + 1) = t``."""
    t = float(t)
    if t < -0.25:
        raise DomainError("t = {0!r} has no real ell".format(t))
    return max((-1.0 + np.sqrt(1.0 + 4.0 * t)) / 2.0, 0.0)


def radial_aim_problem(ell, mode=EXACT):
    """Radial channel in ``x = 2 kappa r`` with eigen-parameter ``nu = s / kappa``.

    ``lambda0 = (x - (2 ell + 2)) / x`` and ``s0 = (ell + 1 - nu) / x``.

    :param ell: centrifugal index, >= 0.
    :param mode: scalar mode of the coefficients.
    :return: AimProblem on ``(0, inf)``.
    """
    if ell < 0:
        raise DomainError("ell must be >= 0, got {0!r}".format(ell))
    ell_s = as_scalar(ell, mode)
    x = Poly([0, 1], mode)
    lambda0 = RatFunc(Poly([-(2 * ell_s + 2), 1], mode), x, 1)
    s0 = RatFunc(ParamPoly([Poly([ell_s + 1, -1], mode)], mode), x, 1)
    return AimProblem(lambda0, s0, parameter_name='nu', domain_hint=(0, float('inf')),
                      default_x0=as_scalar(1, mode), root_interval=(float(ell), float('inf')),
                      name='radial(ell={0})'.format(ell))


def angular_aim_problem(a, b, mode=EXACT):
    """Polar channel in ``y = (1 + cos theta) / 2`` with eigen-parameter ``t = ell (ell + 1)``.

    ``lambda0 = -(2a + 1 - 2(a + b + 1) y) / (y (1 - y))`` and
    ``s0 = ((a + b)(a + b + 1) - t) / (y (1 - y))``.

    :param a: exponent at ``y = 0``, >= 0.
    :param b: exponent at ``y = 1``, >= 0.
    :param mode: scalar mode of the coefficients.
    :return: AimProblem on ``(0, 1)``.
    """
    if a < 0 or b < 0:
        raise DomainError("a and b must be >= 0, got a={0!r} b={1!r}".format(a, b))
    a_s, b_s = as_scalar(a, mode), as_scalar(b, mode)
    base = Poly([0, 1, -1], mode)
    lambda0 = RatFunc(Poly([-(2 * a_s + 1), 2 * (a_s + b_s + 1)], mode), base, 1)
    s0 = RatFunc(ParamPoly([Poly([(a_s + b_s) * (a_s + b_s + 1), -1], mode)], mode), base, 1)
    half = Fraction(1, 2) if mode == EXACT else 0.5
    return AimProblem(lambda0, s0, parameter_name='t', domain_hint=(0, 1), default_x0=half,
                      root_interval=(0.0, float('inf')), name='angular(a={0}, b={1})'.format(a, b))


def energy_from_nu(M, alpha, nu):
    """``E = M (nu**2 - alpha**2/4) / (nu**2 + alpha**2/4)``."""
    q = alpha * alpha / 4.0
    nu2 = float(nu) ** 2
    return M * (nu2 - q) / (nu2 + q)


def radial_energy_closed_form(M, alpha, ell, N):
    """Energy of the radial state with ``nu = ell + 1 + N``."""
    return energy_from_nu(M, alpha, ell + 1 + N)


def angular_exponents(m, beta_p, gamma_p):
    """Boundary exponents ``a = sqrt(m^2 + beta' - gamma') / 2`` and ``b = sqrt(m^2 + beta' + gamma') / 2``.

    :return: tuple ``(a, b)``.
    """
    m2 = float(m) ** 2
    lower = m2 + beta_p - gamma_p
    upper = m2 + beta_p + gamma_p
    if lower < 0:
        raise UnboundChannelError("m^2 + beta' - gamma'", lower)
    if upper < 0:
        raise UnboundChannelError("m^2 + beta' + gamma'", upper)
    return np.sqrt(lower) / 2.0, np.sqrt(upper) / 2.0


def effective_ell(m, beta_p, gamma_p, n):
    """``ell_n = sqrt((m^2 + beta' + sqrt((m^2 + beta')^2 - gamma'^2)) / 2) + n``, equal to ``a + b + n``."""
    q = float(m) ** 2 + beta_p
    if q < abs(gamma_p):
        raise UnboundChannelError("m^2 + beta' - |gamma'|", q - abs(gamma_p))
    disc = q * q - gamma_p * gamma_p
    return np.sqrt((q + np.sqrt(disc)) / 2.0) + n


def angular_channel(params, E, m):
    beta_p = (E + params.M) * params.beta
    gamma_p = (E + params.M) * params.gamma
    a, b = angular_exponents(m, beta_p, gamma_p)
    return AngularChannel(beta_p, gamma_p, a, b, abs(m))


def radial_channel(params, E, ell, N):
    """Radial channel quantities at energy ``E``; raises :class:`NotBoundStateError` unless ``|E| < M``."""
    if not abs(E) < params.M:
        raise NotBoundStateError(E, params.M)
    k2 = E * E - params.M * params.M
    kappa = np.sqrt(-k2)
    return RadialChannel(ell, (E + params.M) * params.alpha / 2.0, k2, kappa, 2.0 * kappa, N)


def _rhs_closed_form(params, qn, E):
    try:
        ell = effective_ell(qn.m_abs, (E + params.M) * params.beta, (E + params.M) * params.gamma, qn.n)
    except UnboundChannelError as e:
        raise e.at_energy(E)
    return radial_energy_closed_form(params.M, params.alpha, ell, qn.N), ell


def _rhs_aim(params, qn, E, n_iter=None, mode=FLOAT, x0=None):
    """AIM right-hand side: the polar root ``t_n`` gives ``ell``, the radial root ``nu_N`` gives the energy.

    Both channels are quantized through :func:`collapsed_roots`, exact on the
    decimal values of ``a``, ``b`` and ``ell``. The default depth is two past
    the wanted root in each channel; ``x0`` is the radial evaluation point.
    """
    try:
        channel = angular_channel(params, E, qn.m)
    except UnboundChannelError as e:
        raise e.at_energy(E)
    depth = qn.n + 2 if n_iter is None else n_iter
    angular = collapsed_roots(angular_aim_problem(channel.a, channel.b, mode), depth)
    if len(angular.roots) <= qn.n:
        raise NoBoundStateError("AIM resolved only {0} polar roots at E = {1!r}".format(len(angular.roots), E))
    ell = ell_from_t(angular.roots[qn.n])
    depth = qn.N + 2 if n_iter is None else n_iter
    radial = collapsed_roots(radial_aim_problem(ell, mode), depth, x0)
    if len(radial.roots) <= qn.N:
        raise NoBoundStateError("AIM resolved only {0} radial roots at E = {1!r}".format(len(radial.roots), E))
    return energy_from_nu(params.M, params.alpha, radial.roots[qn.N]), ell


def self_consistency_defect(params, qn, E):
    """``g(E) = E - RHS(E)``."""
    return E - _rhs_closed_form(params, qn, E)[0]


def self_consistent_roots(params, qn, samples=SCAN_INTERVALS):
    """Every energy in ``(-M, M)`` where ``g(E) = E - RHS(E)`` changes sign.

    The scan uses ``samples`` subintervals of ``(-M + eps, M - eps)`` with
    ``eps = 1e-9 M``; each bracket is refined with Brent's method. The returned energy
    is ``RHS(E*)`` at the refined root ``E*``.

    :return: ascending list of energies.
    """
    M = params.M
    eps = 1e-9 * M
    grid = np.linspace(-M + eps, M - eps, samples + 1)
    values = [self_consistency_defect(params, qn, E) for E in grid]
    g = lambda E: self_consistency_defect(params, qn, E)
    roots = []
    for i in range(samples):
        lo, hi, g_lo, g_hi = grid[i], grid[i + 1], values[i], values[i + 1]
        if g_lo == 0.0:
            root = lo
        elif g_lo * g_hi < 0:
            root = brentq(g, lo, hi, xtol=1e-13 * M, maxiter=200)
        else:
            continue
        roots.append(_rhs_closed_form(params, qn, root)[0])
    if values[-1] == 0.0:
        roots.append(_rhs_closed_form(params, qn, grid[-1])[0])
    logger.debug("qn={0}: {1} sign change(s) on {2} subintervals".format(tuple(qn), len(roots), samples))
    return roots


def _refine_with_aim(params, qn, guess, n_iter, mode, x0):
    M = params.M
    f = lambda E: E - _rhs_aim(params, qn, E, n_iter, mode, x0)[0]
    width = 1e-6 * M
    for _ in range(8):
        lo, hi = max(guess - width, -M + 1e-9 * M), min(guess + width, M - 1e-9 * M)
        f_lo, f_hi = f(lo), f(hi)
        if f_lo == 0.0:
            return lo
        if f_hi == 0.0:
            return hi
        if f_lo * f_hi < 0:
            return brentq(f, lo, hi, xtol=1e-13 * M, maxiter=200)
        width *= 10.0
    raise NoBoundStateError("no AIM bracket around E = {0!r} for qn {1}".format(guess, tuple(qn)))


def self_consistent_spectrum(params, qn, method=CLOSED_FORM, n_iter=None, mode=FLOAT, x0=None):
    """Solve ``E = RHS(E)`` for one state.

    :param params: ModelParams.
    :param qn: QuantumNumbers.
    :param method: ``"closed_form"`` evaluates the right-hand side with the
        closed-form ``ell`` and energy; ``"aim"`` re-solves both channels with
        AIM at every trial energy, bracketing around the closed-form root.
    :param n_iter: AIM depth of both channels for ``method="aim"``, default two past
        the wanted root in each channel.
    :param mode: scalar mode of the AIM channel problems.
    :param x0: radial AIM evaluation point, default 1.
    :return: SpectrumEntry for the lowest self-consistent energy.
    """
    roots = self_consistent_roots(params, qn)
    if not roots:
        raise NoBoundStateError("no self-consistent bound state for qn {0} with {1}".format(tuple(qn), params))
    if len(roots) > 1:
        logger.warning("qn {0}: {1} self-consistent energies {2}".format(tuple(qn), len(roots), roots))
    energy = roots[0]
    if method == AIM:
        E = _refine_with_aim(params, qn, energy, n_iter, mode, x0)
        energy, ell = _rhs_aim(params, qn, E, n_iter, mode, x0)
        residual = abs(E - energy)
    elif method == CLOSED_FORM:
        rhs, ell = _rhs_closed_form(params, qn, energy)
        residual = abs(energy - rhs)
    else:
        raise ValueError("method must be 'closed_form' or 'aim', got {0!r}".format(method))
    return SpectrumEntry(qn, energy, ell, residual, method, len(roots), roots)


def spectrum(params, N_max, n_max, m_values, method=CLOSED_FORM, jobs=1, n_iter=None, mode=FLOAT, x0=None):
    """All states with ``N <= N_max``, ``n <= n_max`` and ``m`` in ``m_values``.

    States that fail (unbound channel, no self-consistent root) are collected in
    ``errors`` as ``(qn, message)``; the rest are in ``entries``, ordered by
    ``(N, n, m)``.

    :param jobs: worker threads; ordering does not depend on it.
    :param n_iter: AIM depth for ``method="aim"``; with ``mode`` and ``x0`` as in
        :func:`self_consistent_spectrum`.
    :return: Spectrum.
    """
    states = [QuantumNumbers(N, n, m) for N in range(N_max + 1) for n in range(n_max + 1)
              for m in sorted(set(m_values))]

    def solve(qn):
        try:
            return self_consistent_spectrum(params, qn, method, n_iter, mode, x0), None
        except AimkgError as e:
            logger.info("qn {0}: {1}".format(tuple(qn), e))
            return None, (qn, str(e))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(solve, states))
    else:
        results = [solve(qn) for qn in states]
    return Spectrum([r for r, _ in results if r is not None], [e for _, e in results if e is not None])


def polar_equation_residual(a, b, t, y, G, dG, d2G):
    """Relative residual of ``y(1-y) (y(1-y) G')' + [t y(1-y) - a^2 - (b^2 - a^2) y] G = 0``."""
    w = y * (1.0 - y)
    kinetic = w * ((1.0 - 2.0 * y) * dG + w * d2G)
    potential = (t * w - a * a - (b * b - a * a) * y) * G
    scale = np.abs(w * (1.0 - 2.0 * y) * dG) + np.abs(w * w * d2G) + np.abs(t * w * G) + \
        np.abs((a * a + (b * b - a * a) * y) * G)
    return np.abs(kinetic + potential) / np.where(scale > 0, scale, 1.0)


def verify_angular_reduction(a, b, y, n=0):
    """Substitute ``G = y^a (1-y)^b 2F1(-n, a+b+ell+1; 2a+1; y)`` with ``ell = a+b+n`` into the polar equation.

    :param y: scalar or array of points in ``(0, 1)``.
    :return: relative residual at each point; of the order of rounding error
        when the reduction holds.
    """
    y = np.asarray(y, dtype=float)
    ell = a + b + n
    f = np.polynomial.Polynomial(gauss2f1_coefficients(n, a + b + ell + 1, 2 * a + 1))
    df, d2f = f.deriv(1), f.deriv(2)
    dlog = a / y - b / (1.0 - y)
    d2log = -a / y ** 2 - b / (1.0 - y) ** 2
    envelope = y ** a * (1.0 - y) ** b
    G = envelope * f(y)
    dG = envelope * (df(y) + dlog * f(y))
    d2G = envelope * (d2f(y) + 2.0 * dlog * df(y) + (d2log + dlog ** 2) * f(y))
    return polar_equation_residual(a, b, separation_constants(ell), y, G, dG, d2G)
