# -*- coding:utf-8 -*-
"""
The Asymptotic Iteration Method.

A problem is a second-order equation written as ``f'' = lambda0 f' + s0 f``
whose coefficients are rational functions of ``x`` and polynomial in one
eigen-parameter ``p``. Iterating

    lambda_n = lambda_{n-1}' + s_{n-1} + lambda0 * lambda_{n-1}
    s_n      = s_{n-1}'      + s0 * lambda_{n-1}

and demanding that ``delta_n = s_n lambda_{n-1} - lambda_n s_{n-1}`` vanish at a
point ``x0`` quantizes ``p``.

"""

import logging
from collections import namedtuple

from .exceptions import PoleError, DegenerateEvaluationError, IterationCapError, DomainError
from .polyfield import EXACT, FLOAT, Poly, as_scalar, poly_real_roots, root_certificate

MAX_ITERATIONS = 60

logger = logging.getLogger(__name__)


class AimProblem(namedtuple('AimProblem', ['lambda0', 's0', 'parameter_name', 'domain_hint',
                                           'default_x0', 'root_interval', 'name'])):
    """Coefficients of ``f'' = lambda0 f' + s0 f``.

    :param lambda0: RatFunc in ``x``.
    :param s0: RatFunc in ``x``, same scalar mode as ``lambda0``.
    :param parameter_name: label of the eigen-parameter, e.g. ``"nu"`` or ``"t"``.
    :param domain_hint: open interval ``(lo, hi)`` of valid evaluation points.
    :param default_x0: evaluation point used when none is given.
    :param root_interval: physical interval roots are reported in.
    :param name: free-form label used in logs.
    """
    __slots__ = ()

    def __new__(cls, lambda0, s0, parameter_name='p', domain_hint=(float('-inf'), float('inf')),
                default_x0=None, root_interval=None, name=''):
        if lambda0.mode != s0.mode:
            raise ValueError("lambda0 and s0 must share a scalar mode")
        if default_x0 is None:
            lo, hi = domain_hint
            default_x0 = (lo + hi) / 2.0 if lo > float('-inf') and hi < float('inf') else 1
        return super(AimProblem, cls).__new__(cls, lambda0, s0, parameter_name, tuple(domain_hint),
                                              default_x0, root_interval, name)

    @property
    def mode(self):
        return self.lambda0.mode


class AimTrace(namedtuple('AimTrace', ['problem', 'pairs', 'delta_fns'])):
    """Iterated ``(lambda_n, s_n)`` pairs and the termination functions ``delta_n``.

    ``pairs[0]`` is ``(lambda0, s0)``; ``delta_fns[n - 1]`` is ``delta_n``.
    """
    __slots__ = ()

    @property
    def max_iter(self):
        return len(self.delta_fns)

    @property
    def deltas(self):
        """Numerators of ``delta_n`` as ParamPoly, n = 1..max_iter."""
        return [d.num for d in self.delta_fns]

    def delta_ratfunc(self, n):
        if not 1 <= n <= self.max_iter:
            raise IndexError("delta index {0} outside 1..{1}".format(n, self.max_iter))
        return self.delta_fns[n - 1]


class RootReport(namedtuple('RootReport', ['roots', 'n_iter', 'x0', 'stability', 'certificates',
                                           'probe_roots', 'probe_errors', 'flagged'])):
    """Quantized eigen-parameter values.

    :param roots: sorted roots computed at ``x0``.
    :param n_iter: iteration depth used.
    :param x0: designated evaluation point.
    :param stability: max absolute root drift across probes (0 for a single point).
    :param certificates: normalized residual of each root.
    :param probe_roots: ``((x0, roots), ...)`` per successful probe.
    :param probe_errors: ``((x0, message), ...)`` per failed probe.
    :param flagged: True when probes disagreed on the number of roots.
    """
    __slots__ = ()

    def __new__(cls, roots, n_iter, x0, stability=0.0, certificates=(), probe_roots=(), probe_errors=(),
                flagged=False):
        return super(RootReport, cls).__new__(cls, tuple(roots), n_iter, x0, stability, tuple(certificates),
                                              tuple(probe_roots), tuple(probe_errors), flagged)


def scalar_step(lambda_prev, s_prev, dlambda_prev, ds_prev, lambda0, s0):
    """One iteration on already evaluated values.

    :return: tuple ``(lambda_n, s_n)``.
    """
    return dlambda_prev + s_prev + lambda0 * lambda_prev, ds_prev + s0 * lambda_prev


def aim_step(prev, problem):
    """Advance ``(lambda_{n-1}, s_{n-1})`` to ``(lambda_n, s_n)``."""
    lambda_prev, s_prev = prev
    lambda_n = lambda_prev.derive() + s_prev + problem.lambda0 * lambda_prev
    s_n = s_prev.derive() + problem.s0 * lambda_prev
    return lambda_n, s_n


def _delta(current, prev):
    return current[1] * prev[0] - current[0] * prev[1]


def _check_depth(max_iter):
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1, got {0}".format(max_iter))
    if max_iter > MAX_ITERATIONS:
        raise IterationCapError(
            "max_iter = {0} exceeds the cap of {1}: polynomial degrees grow with every iteration".format(
                max_iter, MAX_ITERATIONS))


def run_iterations(problem, max_iter):
    """Build the full trace up to ``max_iter`` iterations.

    :param problem: AimProblem.
    :param max_iter: int in ``1..60``.
    :return: AimTrace.
    """
    _check_depth(max_iter)
    pairs = [(problem.lambda0, problem.s0)]
    deltas = []
    for n in range(1, max_iter + 1):
        pairs.append(aim_step(pairs[-1], problem))
        deltas.append(_delta(pairs[-1], pairs[-2]))
        logger.debug("{0}: iteration {1}, delta numerator degree x={2} {3}={4}".format(
            problem.name or 'aim', n, deltas[-1].num.degree_x, problem.parameter_name, deltas[-1].num.degree_p))
    return AimTrace(problem, tuple(pairs), tuple(deltas))


def _series_derive(a):
    return [c.scale(k) for k, c in enumerate(a)][1:]


def _series_mul(a, b, length):
    out = [Poly([], a[0].mode)] * length
    for i, ai in enumerate(a[:length]):
        if ai.is_zero:
            continue
        for j in range(min(len(b), length - i)):
            if not b[j].is_zero:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def collapsed_deltas(problem, max_iter, x0=None):
    """``delta_n(x0; p)`` for n = 1..max_iter without building the trace in ``x``.

    ``lambda0`` and ``s0`` are expanded in exact Taylor series around ``x0``
    and the iteration runs on truncated series; each step consumes one order.
    Float problems enter exact arithmetic through :func:`as_scalar`, so the
    result is exact for the decimal values of their coefficients.

    :return: list of exact Poly in the parameter, ``[delta_1, ..., delta_max_iter]``.
    """
    _check_depth(max_iter)
    x0 = problem.default_x0 if x0 is None else x0
    point = as_scalar(x0, EXACT)
    lambda0 = problem.lambda0.to_mode(EXACT).taylor(point, max_iter)
    s0 = problem.s0.to_mode(EXACT).taylor(point, max_iter)
    lo, hi = problem.domain_hint
    if not lo < point < hi:
        raise DomainError("x0 = {0} lies outside the domain {1}".format(x0, problem.domain_hint))
    lam, s = lambda0, s0
    deltas = []
    for n in range(1, max_iter + 1):
        length = len(lam) - 1
        lam_next = [d + t + u for d, t, u in zip(_series_derive(lam), s, _series_mul(lambda0, lam, length))]
        s_next = [d + u for d, u in zip(_series_derive(s), _series_mul(s0, lam, length))]
        deltas.append(s_next[0] * lam[0] - lam_next[0] * s[0])
        lam, s = lam_next, s_next
    logger.debug("{0}: collapsed {1} iterations at x0 = {2}, final degree {3}={4}".format(
        problem.name or 'aim', max_iter, x0, problem.parameter_name, deltas[-1].degree))
    return deltas


def _report(problem, collapsed, n_iter, x0, interval):
    if collapsed.is_zero:
        raise DegenerateEvaluationError(x0)
    roots = poly_real_roots(collapsed, interval)
    certificates = [root_certificate(collapsed, r) for r in roots]
    if problem.mode == FLOAT:
        roots = [float(r) for r in roots]
    return RootReport(roots, n_iter, x0, 0.0, certificates)


def collapsed_roots(problem, n_iter, x0=None, interval=None):
    """Quantization roots at depth ``n_iter`` from :func:`collapsed_deltas`.

    :return: RootReport with ``stability == 0``; roots are floats for a float problem.
    """
    x0 = problem.default_x0 if x0 is None else x0
    interval = problem.root_interval if interval is None else interval
    return _report(problem, collapsed_deltas(problem, n_iter, x0)[-1], n_iter, x0, interval)


def quantization_roots(trace, x0=None, n_iter=None, interval=None):
    """Roots in the eigen-parameter of ``delta_{n_iter}(x0; p) = 0``.

    Exact traces collapse their symbolic ``delta_n`` at ``x0``. Float traces
    go through :func:`collapsed_deltas`: expanded coefficients of a float
    ``delta_n`` cancel badly from depth ten on.

    :param trace: AimTrace.
    :param x0: evaluation point, default ``problem.default_x0``.
    :param n_iter: iteration depth, default the full trace.
    :param interval: ``(lo, hi)`` for the roots, default ``problem.root_interval``.
    :return: RootReport with ``stability == 0``.
    """
    problem = trace.problem
    x0 = problem.default_x0 if x0 is None else x0
    n_iter = trace.max_iter if n_iter is None else n_iter
    interval = problem.root_interval if interval is None else interval
    if not 1 <= n_iter <= trace.max_iter:
        raise ValueError("n_iter must be in 1..{0}, got {1}".format(trace.max_iter, n_iter))
    if problem.mode == FLOAT:
        return collapsed_roots(problem, n_iter, x0, interval)
    delta = trace.delta_ratfunc(n_iter)
    point = as_scalar(x0, problem.mode)
    if delta.power and delta.base(point) == 0:
        raise PoleError(x0)
    lo, hi = problem.domain_hint
    if not lo < point < hi:
        raise DomainError("x0 = {0} lies outside the domain {1}".format(x0, problem.domain_hint))
    return _report(problem, delta.num.eval_x(point), n_iter, x0, interval)


def _drift(reference, roots):
    count = min(len(reference), len(roots))
    if not count:
        return 0.0
    return max(min(abs(float(r) - float(q)) for q in roots) for r in reference[:count])


def root_stability(problem, n_iter, probes, x0=None, interval=None, trace=None):
    """Quantize at several evaluation points and report the worst root drift.

    Failing probes (a pole, a degenerate point) are recorded in
    ``probe_errors`` and do not affect the others. A probe returning a
    different number of roots sets ``flagged``; only the common prefix of the
    sorted roots is paired.

    :param problem: AimProblem.
    :param n_iter: iteration depth.
    :param probes: at least two evaluation points.
    :param x0: designated point the reported roots come from, default the first successful probe.
    :param interval: root interval, default ``problem.root_interval``.
    :param trace: optional prebuilt trace of depth ``>= n_iter``; unused for a float problem.
    :return: RootReport.
    """
    probes = list(probes)
    if len(probes) < 2:
        raise ValueError("root_stability needs at least two probes")
    if problem.mode == FLOAT:
        roots_at = lambda point: collapsed_roots(problem, n_iter, point, interval)
    else:
        trace = run_iterations(problem, n_iter) if trace is None else trace
        roots_at = lambda point: quantization_roots(trace, point, n_iter, interval)
    results, errors = [], []
    for probe in probes:
        try:
            results.append((probe, roots_at(probe)))
        except (PoleError, DegenerateEvaluationError, DomainError) as e:
            logger.warning("probe x0 = {0} failed: {1}".format(probe, e))
            errors.append((probe, str(e)))
    if x0 is None:
        if not results:
            raise DegenerateEvaluationError(probes[0])
        designated = results[0][1]
    else:
        designated = roots_at(x0)
    flagged = False
    stability = 0.0
    for probe, report in results:
        if len(report.roots) != len(designated.roots):
            flagged = True
            logger.warning("root count mismatch: {0} roots at x0 = {1}, {2} at x0 = {3}".format(
                len(report.roots), probe, len(designated.roots), designated.x0))
        stability = max(stability, _drift(designated.roots, report.roots))
    return RootReport(designated.roots, n_iter, designated.x0, stability, designated.certificates,
                      [(p, r.roots) for p, r in results], errors, flagged)


def iteration_table(problem, n_iters, x0=None, interval=None, trace=None):
    """Root sets at every depth ``1..n_iters``.

    :param trace: optional prebuilt trace of depth ``>= n_iters`` for an exact problem.
    :return: list of RootReport, one per depth.
    """
    x0 = problem.default_x0 if x0 is None else x0
    interval = problem.root_interval if interval is None else interval
    if problem.mode == FLOAT:
        deltas = collapsed_deltas(problem, n_iters, x0)
        return [_report(problem, d, n, x0, interval) for n, d in enumerate(deltas, 1)]
    if trace is None:
        trace = run_iterations(problem, n_iters)
    return [quantization_roots(trace, x0, n, interval) for n in range(1, n_iters + 1)]
