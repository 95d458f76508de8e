# -*- coding:utf-8 -*-
"""
Dense univariate polynomials, polynomials with coefficients in one
eigen-parameter, and rational functions over them.

Two scalar modes exist and a computation stays inside one of them:

- ``"exact"``: :class:`fractions.Fraction` coefficients, bit-exact arithmetic.
- ``"float"``: Python ``float`` coefficients.

Values are immutable; every operation returns a new object in canonical form
(trailing zero coefficients trimmed).

"""

import logging
import numbers
from fractions import Fraction

import numpy as np

from .exceptions import ModeMismatchError, PoleError, ZeroPolynomialError, DomainError

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

ROOT_DEDUP_TOL = 1e-9
ROOT_REFINE_TOL = 1e-12

logger = logging.getLogger(__name__)


def infer_mode(values):
    """Return ``"float"`` if any value is a binary float, else ``"exact"``."""
    for v in values:
        if isinstance(v, Poly):
            if v.mode == FLOAT:
                return FLOAT
        elif isinstance(v, (float, np.floating)):
            return FLOAT
    return EXACT


def as_scalar(value, mode):
    """Explicit conversion of an input value into ``mode``.

    Floats enter exact mode through their shortest decimal representation,
    so ``0.3`` becomes ``3/10``.
    """
    if mode == EXACT:
        if isinstance(value, (float, np.floating)):
            return Fraction(repr(float(value)))
        if isinstance(value, np.integer):
            value = int(value)
        return Fraction(value)
    if mode == FLOAT:
        return float(value)
    raise ValueError("mode must be one of {0}, got {1!r}".format(MODES, mode))


def _check_scalar(value, mode):
    # arithmetic operand: ints are welcome in both modes, anything else must match
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("boolean is not a scalar")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value)) if mode == EXACT else float(value)
    if mode == EXACT:
        if isinstance(value, Fraction):
            return value
        raise ModeMismatchError(EXACT, type(value).__name__)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, Fraction):
        raise ModeMismatchError(FLOAT, "Fraction")
    raise TypeError("unsupported scalar {0!r}".format(value))


def _is_scalar(value):
    return isinstance(value, numbers.Number) and not isinstance(value, complex)


class Poly(object):
    """Dense polynomial ``sum(coeffs[k] * x**k)``.

    :param coeffs: iterable of scalars, index = power.
    :param mode: ``"exact"`` or ``"float"``; inferred from the coefficients when omitted.
    """

    __slots__ = ('coeffs', 'mode')

    def __init__(self, coeffs=(), mode=None):
        coeffs = list(coeffs)
        if mode is None:
            mode = infer_mode(coeffs)
        if mode not in MODES:
            raise ValueError("mode must be one of {0}, got {1!r}".format(MODES, mode))
        values = [as_scalar(c, mode) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self.coeffs = tuple(values)
        self.mode = mode

    @classmethod
    def constant(cls, value, mode=None):
        return cls([value], mode)

    @classmethod
    def monomial(cls, power, coeff=1, mode=EXACT):
        return cls([0] * power + [coeff], mode)

    @property
    def degree(self):
        """Index of the last nonzero coefficient, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            return as_scalar(0, self.mode)
        return self.coeffs[-1]

    def max_abs_coeff(self):
        return max([abs(c) for c in self.coeffs] or [0])

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.mode != self.mode:
                raise ModeMismatchError(self.mode, other.mode)
            return other
        if _is_scalar(other):
            return Poly([_check_scalar(other, self.mode)], self.mode)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        zero = as_scalar(0, self.mode)
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)], self.mode)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.mode)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly([], self.mode)
        out = [as_scalar(0, self.mode)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, self.mode)

    __rmul__ = __mul__

    def __pow__(self, power):
        if not isinstance(power, int) or power < 0:
            raise ValueError("power must be a nonnegative integer")
        result = Poly([1], self.mode)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def scale(self, factor):
        factor = _check_scalar(factor, self.mode)
        return Poly([c * factor for c in self.coeffs], self.mode)

    def derive(self):
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.mode)

    def __call__(self, x0):
        """Horner evaluation at a scalar point."""
        x0 = as_scalar(x0, self.mode)
        acc = as_scalar(0, self.mode)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def monic(self):
        if self.is_zero:
            return self
        return self.scale(1 / self.lc) if self.mode == EXACT else Poly([c / self.lc for c in self.coeffs], FLOAT)

    def to_float(self):
        return Poly([float(c) for c in self.coeffs], FLOAT)

    def to_mode(self, mode):
        return self if mode == self.mode else Poly(self.coeffs, mode)

    def shift(self, x0):
        """Coefficients of ``self(x0 + h)`` in powers of ``h``."""
        x0 = as_scalar(x0, self.mode)
        a = list(self.coeffs)
        for i in range(len(a) - 1):
            for j in range(len(a) - 2, i - 1, -1):
                a[j] = a[j] + x0 * a[j + 1]
        return Poly(a, self.mode)

    def to_numpy(self):
        """Ascending float coefficients as a numpy array."""
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.mode == other.mode and self.coeffs == other.coeffs
        if _is_scalar(other):
            return self.coeffs == tuple(c for c in [other] if c != 0)
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.mode, self.coeffs))

    def __repr__(self):
        return "Poly([{0}], mode='{1}')".format(", ".join(str(c) for c in self.coeffs), self.mode)

    def to_string(self, var='x'):
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else "{0}^{1}".format(var, k))
            if k and c == 1:
                text = mono
            elif k and c == -1:
                text = "-" + mono
            else:
                text = "{0}{1}".format(c, mono)
            terms.append(text)
        return " + ".join(terms).replace("+ -", "- ")


class ParamPoly(object):
    """Polynomial in ``x`` whose coefficients are :class:`Poly` in the eigen-parameter ``p``.

    :param coeffs: iterable of Poly (or scalars), index = power of ``x``.
    :param mode: scalar mode; inferred from the coefficients when omitted.
    """

    __slots__ = ('coeffs', 'mode')

    def __init__(self, coeffs=(), mode=None):
        coeffs = list(coeffs)
        if mode is None:
            mode = infer_mode(coeffs)
        items = []
        for c in coeffs:
            if isinstance(c, Poly):
                if c.mode != mode:
                    raise ModeMismatchError(mode, c.mode)
                items.append(c)
            else:
                items.append(Poly([c], mode))
        while items and items[-1].is_zero:
            items.pop()
        self.coeffs = tuple(items)
        self.mode = mode

    @classmethod
    def from_poly(cls, poly):
        """Embed a polynomial in ``x`` (parameter-free)."""
        return cls([Poly([c], poly.mode) for c in poly.coeffs], poly.mode)

    @classmethod
    def parameter(cls, mode=EXACT):
        """The eigen-parameter ``p`` itself, constant in ``x``."""
        return cls([Poly([0, 1], mode)], mode)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree_x(self):
        return len(self.coeffs) - 1

    @property
    def degree_p(self):
        return max([c.degree for c in self.coeffs] or [-1])

    def max_abs_coeff(self):
        return max([c.max_abs_coeff() for c in self.coeffs] or [0])

    def _lift(self, other):
        if isinstance(other, ParamPoly):
            if other.mode != self.mode:
                raise ModeMismatchError(self.mode, other.mode)
            return other
        if isinstance(other, Poly):
            if other.mode != self.mode:
                raise ModeMismatchError(self.mode, other.mode)
            return ParamPoly.from_poly(other)
        if _is_scalar(other):
            return ParamPoly([Poly([_check_scalar(other, self.mode)], self.mode)], self.mode)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        zero = Poly([], self.mode)
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return ParamPoly([x + y for x, y in zip(a, b)], self.mode)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly([-c for c in self.coeffs], self.mode)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ParamPoly([], self.mode)
        out = [Poly([], self.mode)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return ParamPoly(out, self.mode)

    __rmul__ = __mul__

    def scale(self, factor):
        return ParamPoly([c.scale(factor) for c in self.coeffs], self.mode)

    def derive(self, wrt='x'):
        if wrt == 'x':
            return ParamPoly([c.scale(k) for k, c in enumerate(self.coeffs)][1:], self.mode)
        if wrt in ('p', 'parameter'):
            return ParamPoly([c.derive() for c in self.coeffs], self.mode)
        raise ValueError("wrt must be 'x' or 'parameter', got {0!r}".format(wrt))

    def eval_x(self, x0):
        """Collapse to a :class:`Poly` in the parameter."""
        x0 = as_scalar(x0, self.mode)
        acc = Poly([], self.mode)
        for c in reversed(self.coeffs):
            acc = acc.scale(x0) + c
        return acc

    def eval_p(self, p0):
        """Collapse to a :class:`Poly` in ``x``."""
        return Poly([c(p0) for c in self.coeffs], self.mode)

    def to_mode(self, mode):
        if mode == self.mode:
            return self
        return ParamPoly([c.to_mode(mode) for c in self.coeffs], mode)

    def shift(self, x0):
        """Coefficients of ``self(x0 + h, p)`` in powers of ``h``, each a Poly in ``p``."""
        x0 = as_scalar(x0, self.mode)
        a = list(self.coeffs)
        for i in range(len(a) - 1):
            for j in range(len(a) - 2, i - 1, -1):
                a[j] = a[j] + a[j + 1].scale(x0)
        return a

    def __call__(self, x0, p0=None):
        collapsed = self.eval_x(x0)
        return collapsed if p0 is None else collapsed(p0)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.mode == other.mode and self.coeffs == other.coeffs
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.mode, self.coeffs))

    def __repr__(self):
        return "ParamPoly([{0}], mode='{1}')".format(
            ", ".join(c.to_string('p') for c in self.coeffs), self.mode)


class RatFunc(object):
    """Rational function ``num / base**power``.

    ``num`` is a :class:`ParamPoly`; ``base`` is a parameter-free :class:`Poly`
    in ``x``, normalized monic. Keeping the denominator as a power of one base
    makes the quotient rule raise the power by one instead of squaring.

    :param num: ParamPoly, Poly or scalar numerator.
    :param base: Poly in ``x``; ``None`` means the constant 1.
    :param power: nonnegative int.
    """

    __slots__ = ('num', 'base', 'power')

    def __init__(self, num, base=None, power=1):
        if isinstance(num, Poly):
            num = ParamPoly.from_poly(num)
        elif not isinstance(num, ParamPoly):
            num = ParamPoly([num])
        mode = num.mode
        if base is None or power == 0:
            base, power = Poly([1], mode), 0
        if not isinstance(base, Poly):
            raise TypeError("base must be a Poly in x")
        if base.mode != mode:
            raise ModeMismatchError(mode, base.mode)
        if base.is_zero:
            raise DomainError("denominator is identically zero")
        if power < 0:
            raise ValueError("power must be nonnegative")
        if base.degree == 0:
            num = num.scale(1 / base.lc ** power) if mode == EXACT else num.scale(1.0 / base.lc ** power)
            base, power = Poly([1], mode), 0
        elif base.lc != 1:
            lc = base.lc
            base = base.monic()
            num = num.scale(1 / lc ** power) if mode == EXACT else num.scale(1.0 / lc ** power)
        self.num = num
        self.base = base
        self.power = power

    @property
    def mode(self):
        return self.num.mode

    @property
    def den(self):
        """Denominator as a :class:`ParamPoly`."""
        return ParamPoly.from_poly(self.base ** self.power)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.mode != self.mode:
                raise ModeMismatchError(self.mode, other.mode)
            return other
        if isinstance(other, (Poly, ParamPoly)):
            if other.mode != self.mode:
                raise ModeMismatchError(self.mode, other.mode)
            return RatFunc(other)
        if _is_scalar(other):
            return RatFunc(ParamPoly([Poly([_check_scalar(other, self.mode)], self.mode)], self.mode))
        return NotImplemented

    def _shares_base(self, other):
        return self.power == 0 or other.power == 0 or self.base == other.base

    def _aligned(self, other):
        """Numerators of ``self`` and ``other`` over one common denominator."""
        if self._shares_base(other):
            base = other.base if self.power == 0 else self.base
            power = max(self.power, other.power)
            lift = lambda f: f.num * ParamPoly.from_poly(base ** (power - f.power)) if power > f.power else f.num
            return lift(self), lift(other), base, power
        left = self.base ** self.power
        right = other.base ** other.power
        return (self.num * ParamPoly.from_poly(right), other.num * ParamPoly.from_poly(left),
                left * right, 1)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, base, power = self._aligned(other)
        return RatFunc(a + b, base, power)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.base, self.power)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._shares_base(other):
            base = other.base if self.power == 0 else self.base
            return RatFunc(self.num * other.num, base, self.power + other.power)
        return RatFunc(self.num * other.num, self.base ** self.power * other.base ** other.power, 1)

    __rmul__ = __mul__

    def scale(self, factor):
        return RatFunc(self.num.scale(factor), self.base, self.power)

    def derive(self):
        """Quotient rule: ``(num' * base - power * num * base') / base**(power + 1)``."""
        if self.power == 0:
            return RatFunc(self.num.derive('x'))
        base = ParamPoly.from_poly(self.base)
        dbase = ParamPoly.from_poly(self.base.derive())
        num = self.num.derive('x') * base - (self.num * dbase).scale(self.power)
        return RatFunc(num, self.base, self.power + 1)

    def eval(self, x0, p0=None):
        """Evaluate at ``x0`` (and ``p0`` if given); raises :class:`PoleError` at a pole."""
        x0 = as_scalar(x0, self.mode)
        den = self.base(x0) ** self.power
        if den == 0:
            raise PoleError(x0)
        collapsed = self.num.eval_x(x0)
        collapsed = collapsed.scale(1 / den) if self.mode == EXACT else collapsed.scale(1.0 / den)
        return collapsed if p0 is None else collapsed(p0)

    __call__ = eval

    def to_mode(self, mode):
        if mode == self.mode:
            return self
        return RatFunc(self.num.to_mode(mode), self.base.to_mode(mode), self.power)

    def taylor(self, x0, order):
        """Taylor coefficients around ``x0`` up to ``h**order``.

        :return: list of ``order + 1`` Poly in the parameter; raises :class:`PoleError` at a pole.
        """
        x0 = as_scalar(x0, self.mode)
        zero = Poly([], self.mode)
        num = self.num.shift(x0)[:order + 1]
        num += [zero] * (order + 1 - len(num))
        den = list((self.base ** self.power).shift(x0).coeffs)
        if not den or den[0] == 0:
            raise PoleError(x0)
        inv = 1 / den[0] if self.mode == EXACT else 1.0 / den[0]
        out = []
        for j in range(order + 1):
            acc = num[j]
            for i in range(1, min(j, len(den) - 1) + 1):
                acc = acc - out[j - i].scale(den[i])
            out.append(acc.scale(inv))
        return out

    def __repr__(self):
        return "RatFunc({0!r} / ({1})^{2})".format(self.num, self.base.to_string('x'), self.power)


def poly_arith(a, b, op):
    """Arithmetic on two polynomials in the same scalar mode.

    :param a: Poly.
    :param b: Poly, or a scalar when ``op == "scale"``.
    :param op: one of ``"add"``, ``"sub"``, ``"mul"``, ``"scale"``.
    :return: Poly in canonical form.
    """
    if op == "scale":
        return a.scale(b)
    if isinstance(b, Poly) and a.mode != b.mode:
        raise ModeMismatchError(a.mode, b.mode)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("op must be add, sub, mul or scale, got {0!r}".format(op))


def poly_derive(p, wrt='x'):
    """Derivative of a Poly, or of a ParamPoly with respect to ``x`` or the parameter."""
    if isinstance(p, ParamPoly):
        return p.derive(wrt)
    return p.derive()


def ratfunc_derive(f):
    return f.derive()


def evaluate(f, x0, p0=None):
    """Evaluate a Poly, ParamPoly or RatFunc.

    A ParamPoly or RatFunc evaluated at ``x0`` only collapses to a Poly in the
    parameter; supplying ``p0`` as well yields a scalar.
    """
    if isinstance(f, Poly):
        return f(x0)
    if isinstance(f, ParamPoly):
        return f(x0, p0)
    if isinstance(f, RatFunc):
        return f.eval(x0, p0)
    raise TypeError("cannot evaluate {0!r}".format(f))


def poly_divmod(a, b):
    """Long division ``a = q*b + r`` with ``deg r < deg b``."""
    if a.mode != b.mode:
        raise ModeMismatchError(a.mode, b.mode)
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    mode = a.mode
    rem = list(a.coeffs)
    quot = [as_scalar(0, mode)] * max(len(rem) - len(b.coeffs) + 1, 0)
    lc = b.lc
    for k in range(len(rem) - len(b.coeffs), -1, -1):
        factor = rem[k + len(b.coeffs) - 1] / lc
        quot[k] = factor
        if factor == 0:
            continue
        for j, c in enumerate(b.coeffs):
            rem[k + j] -= factor * c
        rem[k + len(b.coeffs) - 1] = as_scalar(0, mode)
    return Poly(quot, mode), Poly(rem[:max(len(b.coeffs) - 1, 0)], mode)


def poly_gcd(a, b):
    """Monic greatest common divisor (exact mode)."""
    if a.mode != EXACT or b.mode != EXACT:
        raise DomainError("poly_gcd requires exact coefficients")
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def square_free(p):
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    if p.degree < 1:
        return p
    g = poly_gcd(p, p.derive())
    return poly_divmod(p, g)[0].monic() if g.degree > 0 else p.monic()


def sturm_sequence(p):
    """Sturm sequence ``p, p', -rem(p_{k-2}, p_{k-1}), ...`` of a square-free ``p``."""
    seq = [p, p.derive()]
    while not seq[-1].is_zero:
        seq.append(-poly_divmod(seq[-2], seq[-1])[1])
    return seq[:-1]


def _sign_variations(seq, x0):
    signs = [v > 0 for v in (q(x0) for q in seq) if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_count(seq, lo, hi):
    """Number of distinct real roots in ``(lo, hi]``."""
    return _sign_variations(seq, lo) - _sign_variations(seq, hi)


def _cauchy_bound(p):
    lc = abs(p.lc)
    return 1 + max(abs(c) / lc for c in p.coeffs[:-1]) if p.degree > 0 else 1


def _root_bound(p):
    """Fujiwara bound on the root moduli, capped by the Cauchy bound."""
    cauchy = _cauchy_bound(p)
    d = p.degree
    if d < 1:
        return cauchy
    lc = abs(p.lc)
    try:
        terms = [float(abs(p.coeffs[d - k]) / lc) ** (1.0 / k) for k in range(1, d)]
        terms.append(float(abs(p.coeffs[0]) / (2 * lc)) ** (1.0 / d))
    except OverflowError:
        return cauchy
    fujiwara = 2 * max(terms) + 1
    if p.mode == EXACT:
        fujiwara = Fraction(fujiwara)
    return min(cauchy, fujiwara)


def _snap_exact(p, lo, hi):
    """Small-denominator rational inside ``[lo, hi]`` that is an exact root, else ``None``."""
    mid = (lo + hi) / 2
    candidates = [Fraction(round(mid)), mid.limit_denominator(64), mid.limit_denominator(4096)]
    for c in candidates:
        if lo - ROOT_REFINE_TOL <= c <= hi + ROOT_REFINE_TOL and p(c) == 0:
            return c
    return None


def _exact_real_roots(p, lo, hi):
    sqf = square_free(p)
    if sqf.degree < 1:
        return []
    seq = sturm_sequence(sqf)
    seen = {}

    def count_in(a, b):
        for x in (a, b):
            if x not in seen:
                seen[x] = _sign_variations(seq, x)
        return seen[a] - seen[b]

    roots = []
    if sqf(lo) == 0:
        roots.append(lo)
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        count = count_in(a, b)
        if count == 0:
            continue
        if count > 1:
            m = (a + b) / 2
            stack.extend([(a, m), (m, b)])
            continue
        if sqf(b) == 0:
            roots.append(b)
            continue
        fa = sqf(a)
        exact = None
        while b - a > ROOT_REFINE_TOL:
            m = (a + b) / 2
            fm = sqf(m)
            if fm == 0:
                exact = m
                break
            if fa != 0:
                inside_left = (fa > 0) != (fm > 0)
            else:
                inside_left = count_in(a, m) == 1
            if inside_left:
                b = m
            else:
                a, fa = m, fm
        if exact is None:
            exact = _snap_exact(sqf, a, b)
        roots.append(exact if exact is not None else float((a + b) / 2))
    return roots


def _horner(coeffs, x0):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x0 + c
    return acc


def _float_real_roots(p, lo, hi):
    coeffs = [float(c) for c in p.coeffs]
    scale = max(abs(c) for c in coeffs)
    coeffs = [c / scale for c in coeffs]
    candidates = np.roots(coeffs[::-1])
    roots = []
    for z in sorted(candidates, key=lambda v: v.real):
        r = float(z.real)
        if abs(z.imag) > 1e-6 * (1.0 + abs(z)):
            continue
        width = 1e-6 * (1.0 + abs(r))
        if r < lo - width or r > hi + width:
            continue
        refined = None
        for _ in range(6):
            a, b = r - width, r + width
            fa, fb = _horner(coeffs, a), _horner(coeffs, b)
            if fa == 0.0 or fb == 0.0 or (fa > 0) != (fb > 0):
                refined = _bisect_float(coeffs, a, b, fa, fb)
                break
            width *= 4.0
        if refined is None:
            # no sign change: accept only as an even-multiplicity root, once per cluster
            size = sum(abs(c) * abs(r) ** k for k, c in enumerate(coeffs))
            if abs(_horner(coeffs, r)) <= 1e-8 * size and not (roots and abs(r - roots[-1]) <= width):
                refined = r
        if refined is not None and lo <= refined <= hi:
            roots.append(refined)
    return roots


def _bisect_float(coeffs, a, b, fa, fb):
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    for _ in range(200):
        if b - a <= ROOT_REFINE_TOL * max(1.0, abs(a)):
            break
        m = 0.5 * (a + b)
        fm = _horner(coeffs, m)
        if fm == 0.0:
            return m
        if (fa > 0) != (fm > 0):
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def _dedup(roots):
    out = []
    for r in sorted(roots):
        if out and abs(float(r) - float(out[-1])) <= ROOT_DEDUP_TOL * max(1.0, abs(float(r))):
            continue
        out.append(r)
    return out


def poly_real_roots(p, interval=None):
    """Real roots of ``p``, sorted ascending and deduplicated.

    Exact polynomials are isolated with Sturm sequences and refined by exact
    bisection; roots that are small-denominator rationals come back as
    :class:`~fractions.Fraction`. Float polynomials are seeded from the
    companion matrix (``numpy.roots``) and refined by bisection.

    :param p: Poly.
    :param interval: optional ``(lo, hi)``, closed; default all reals.
    :return: list of roots.
    """
    if p.is_zero:
        raise ZeroPolynomialError()
    if p.degree == 0:
        return []
    lo, hi = interval if interval is not None else (-np.inf, np.inf)
    bound = _root_bound(p)
    lo = max(lo, -bound)
    hi = min(hi, bound)
    if lo > hi:
        return []
    if p.mode == EXACT:
        roots = _exact_real_roots(p, Fraction(lo), Fraction(hi))
    else:
        roots = _float_real_roots(p, float(lo), float(hi))
    return _dedup(roots)


def root_certificate(p, root):
    """Normalized residual ``|p(root)| / sum(|c_k| |root|**k)``; 0 for an exact root."""
    if p.mode == EXACT and isinstance(root, Fraction):
        value = abs(p(root))
        if value == 0:
            return 0.0
        root = float(root)
    coeffs = [float(c) for c in p.coeffs]
    size = sum(abs(c) * abs(float(root)) ** k for k, c in enumerate(coeffs))
    if size == 0:
        return 0.0
    return abs(_horner(coeffs, float(root))) / size
