# -*- coding:utf-8 -*-
"""
Error types raised by aimkg.

Every error derives from :class:`AimkgError` and from the builtin exception a
caller would naturally catch for the same failure, so ``except ValueError``
keeps working around library calls.
"""


class AimkgError(Exception):
    """Base class of all aimkg errors."""


class ModeMismatchError(AimkgError, TypeError):
    """Exact-rational and floating-point values were combined."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super(ModeMismatchError, self).__init__(
            "scalar mode mismatch: cannot combine '{0}' with '{1}'".format(left, right))


class PoleError(AimkgError, ZeroDivisionError):
    """A denominator vanishes at the requested evaluation point."""

    def __init__(self, point, message=None):
        self.point = point
        super(PoleError, self).__init__(message or "denominator vanishes at x0 = {0}".format(point))


class ZeroPolynomialError(AimkgError, ValueError):
    def __init__(self, message="polynomial is identically zero: every value is a root"):
        super(ZeroPolynomialError, self).__init__(message)


class DegenerateEvaluationError(AimkgError, ValueError):
    """The termination numerator collapsed to zero at the chosen point."""

    def __init__(self, point):
        self.point = point
        super(DegenerateEvaluationError, self).__init__(
            "degenerate evaluation point x0 = {0}, retry with different x0".format(point))


class IterationCapError(AimkgError, ValueError):
    pass


class DomainError(AimkgError, ValueError):
    pass


class UnboundChannelError(AimkgError, ValueError):
    """The polar channel has a negative radicand, so no bound angular state exists."""

    def __init__(self, name, radicand, energy=None):
        self.name = name
        self.radicand = radicand
        self.energy = energy
        message = "unbound angular channel: radicand {0} = {1!r} < 0".format(name, radicand)
        if energy is not None:
            message += " at probe energy E = {0!r}".format(energy)
        super(UnboundChannelError, self).__init__(message)

    def at_energy(self, energy):
        return UnboundChannelError(self.name, self.radicand, energy)


class NoBoundStateError(AimkgError, ValueError):
    pass


class NotBoundStateError(AimkgError, ValueError):
    def __init__(self, energy, mass):
        self.energy = energy
        self.mass = mass
        super(NotBoundStateError, self).__init__(
            "not a bound state: |E| = {0!r} is not below M = {1!r}".format(abs(energy), mass))


class ParameterPoleError(AimkgError, ValueError):
    pass


class AccuracyError(AimkgError, ArithmeticError):
    """Quadrature did not converge; carries the last two estimates."""

    def __init__(self, previous, last):
        self.previous = previous
        self.last = last
        super(AccuracyError, self).__init__(
            "quadrature did not converge: last two estimates {0!r} and {1!r}".format(previous, last))


class EigenShortfallError(AimkgError, ValueError):
    def __init__(self, requested, available):
        self.requested = requested
        self.available = available
        super(EigenShortfallError, self).__init__(
            "requested {0} eigenvalues but the grid supports only {1}".format(requested, available))


class ConsistencyError(AimkgError, ValueError):
    pass


class ConfigError(AimkgError, ValueError):
    """Invalid run configuration; ``problems`` lists every violated constraint."""

    def __init__(self, problems):
        self.problems = list(problems)
        super(ConfigError, self).__init__("invalid configuration:\n  - " + "\n  - ".join(self.problems))


class TruncationAdvisory(UserWarning):
    """A numerical setting is likely too coarse for the requested accuracy."""
