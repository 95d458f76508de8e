# -*- coding:utf-8 -*-
"""
Special functions of the eigenfunctions: generalized Laguerre polynomials,
terminating Kummer ``1F1(-N; b; x)`` and Gauss ``2F1(-n, B; c; y)`` series, and
log-gamma for normalization constants.

All evaluators accept scalars or numpy arrays for the argument.

"""

from collections import namedtuple

import numpy as np
from scipy.special import gammaln, poch, binom

from .exceptions import DomainError, ParameterPoleError

LAGUERRE = "laguerre"
KUMMER = "kummer"
GAUSS2F1 = "gauss2f1"


class PolyBasisValue(namedtuple('PolyBasisValue', ['value', 'family', 'degree', 'params'])):
    __slots__ = ()


def _check_degree(degree):
    if int(degree) != degree or degree < 0:
        raise DomainError("degree must be a nonnegative integer, got {0!r}".format(degree))
    return int(degree)


def laguerre_gen(Nn, alpha_idx, x):
    """Generalized Laguerre polynomial ``L_N^(alpha)(x)``.

    Uses ``(k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}``.

    :param Nn: degree, >= 0.
    :param alpha_idx: index, > -1.
    :param x: scalar or array.
    """
    Nn = _check_degree(Nn)
    if not alpha_idx > -1:
        raise DomainError("Laguerre index must be > -1, got {0!r}".format(alpha_idx))
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if Nn == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha_idx - x
    for k in range(1, Nn):
        prev, cur = cur, ((2 * k + 1 + alpha_idx - x) * cur - (k + alpha_idx) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def pochhammer(a, j):
    """Rising factorial ``(a)_j``."""
    return float(poch(a, _check_degree(j)))


def binomial_real(n, k):
    """``C(n, k)`` for real ``n`` and integer ``k >= 0``."""
    return float(binom(n, _check_degree(k)))


def log_gamma_fn(z):
    """``ln Gamma(z)`` for ``z > 0``."""
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr <= 0):
        raise DomainError("log_gamma_fn needs z > 0, got {0!r}".format(z))
    out = gammaln(z_arr)
    return out if out.ndim else float(out)


def _series_coefficients(degree, upper, lower):
    """``sum_j prod((u)_j) / prod((l)_j) / j!`` coefficients for a terminating series."""
    coeffs = [1.0]
    for j in range(degree):
        for l in lower:
            if l + j == 0:
                raise ParameterPoleError(
                    "lower parameter {0!r} hits a Pochhammer pole at j = {1} before the series terminates".format(l, j))
        ratio = 1.0
        for u in upper:
            ratio *= u + j
        for l in lower:
            ratio /= l + j
        coeffs.append(coeffs[-1] * ratio / (j + 1))
    return coeffs


def kummer_coefficients(Nn, b):
    Nn = _check_degree(Nn)
    return _series_coefficients(Nn, (-Nn,), (b,))


def gauss2f1_coefficients(n, B, c):
    """Ascending power coefficients of ``2F1(-n, B; c; y)``."""
    n = _check_degree(n)
    return _series_coefficients(n, (-n, B), (c,))


def _polyval(coeffs, x):
    out = np.polynomial.polynomial.polyval(np.asarray(x, dtype=float), coeffs)
    return out if np.ndim(out) else float(out)


def kummer_abs_sum(Nn, b, x):
    """``sum_j |c_j x^j|`` of the Kummer series, the scale its rounding error is measured against."""
    coeffs = np.abs(kummer_coefficients(Nn, b))
    return _polyval(coeffs, np.abs(x))


def kummer_poly(Nn, b, x):
    """Terminating Kummer series ``1F1(-N; b; x)``."""
    return _polyval(kummer_coefficients(Nn, b), x)


def gauss2f1_poly(n, B, c, y):
    """Terminating Gauss series ``2F1(-n, B; c; y)``."""
    return _polyval(gauss2f1_coefficients(n, B, c), y)


def basis_value(family, degree, params, x):
    """Evaluate one member of a polynomial family and tag it.

    :param family: ``"laguerre"`` (params ``(alpha,)``), ``"kummer"`` (``(b,)``)
        or ``"gauss2f1"`` (``(B, c)``).
    :return: PolyBasisValue.
    """
    params = tuple(params)
    if family == LAGUERRE:
        value = laguerre_gen(degree, params[0], x)
    elif family == KUMMER:
        value = kummer_poly(degree, params[0], x)
    elif family == GAUSS2F1:
        value = gauss2f1_poly(degree, params[0], params[1], x)
    else:
        raise ValueError("unknown polynomial family {0!r}".format(family))
    return PolyBasisValue(value, family, degree, params)
