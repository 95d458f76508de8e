from fractions import Fraction

import numpy as np
import pytest

from aimkg.exceptions import ModeMismatchError, PoleError, ZeroPolynomialError, DomainError
from aimkg.polyfield import (Poly, ParamPoly, RatFunc, EXACT, FLOAT, as_scalar, poly_arith, poly_real_roots,
                             root_certificate, poly_divmod, poly_gcd, square_free, sturm_sequence, sturm_count,
                             evaluate, poly_derive, ratfunc_derive)


def test_as_scalar_exact_uses_shortest_repr():
    assert as_scalar(0.3, EXACT) == Fraction(3, 10)
    assert as_scalar(2, FLOAT) == 2.0
    with pytest.raises(ValueError):
        as_scalar(1, 'decimal')


def test_poly_canonical_form():
    p = Poly([1, 2, 0, 0], EXACT)
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Poly([], EXACT).degree == -1
    assert Poly([0, 0], FLOAT).is_zero


@pytest.mark.parametrize('mode', [EXACT, FLOAT])
def test_poly_arithmetic(mode):
    x = Poly([0, 1], mode)
    assert (x + 1) * (x - 1) == Poly([-1, 0, 1], mode)
    assert (x + 1) ** 3 == Poly([1, 3, 3, 1], mode)
    assert poly_arith(x, Poly([2], mode), 'mul') == Poly([0, 2], mode)
    assert (x * x).derive() == Poly([0, 2], mode)
    assert (x * x + 1)(3) == 10


def test_mixed_modes_raise():
    with pytest.raises(ModeMismatchError):
        Poly([1], EXACT) + Poly([1.0], FLOAT)
    with pytest.raises(ModeMismatchError):
        Poly([1], EXACT) * 0.5
    with pytest.raises(ModeMismatchError):
        Poly([1.0], FLOAT) + Fraction(1, 2)


def test_ints_allowed_in_both_modes():
    assert Poly([1], EXACT) + 1 == Poly([2], EXACT)
    assert Poly([1.0], FLOAT) + 1 == Poly([2.0], FLOAT)


def test_param_poly_collapse():
    p = ParamPoly.parameter(EXACT)
    x = ParamPoly.from_poly(Poly([0, 1], EXACT))
    f = x * x * p + x - 3
    assert f.degree_x == 2
    assert f.degree_p == 1
    assert f.eval_x(2) == Poly([-1, 4], EXACT)
    assert f.eval_p(1) == Poly([-3, 1, 1], EXACT)
    assert f(2, 1) == 3
    assert f.derive('parameter') == x * x
    assert evaluate(f, 1, 0) == -2


def test_ratfunc_base_is_monic():
    f = RatFunc(Poly([1], EXACT), Poly([0, 2], EXACT), 1)
    assert f.base == Poly([0, 1], EXACT)
    assert f.eval(1, 0) == Fraction(1, 2)


def test_ratfunc_derive_raises_power():
    f = RatFunc(Poly([1], EXACT), Poly([0, 1], EXACT), 1)
    df = f.derive()
    assert df.power == 2
    assert df.eval(2, 0) == Fraction(-1, 4)
    assert df.derive().eval(1, 0) == 2


def test_ratfunc_common_denominator():
    x = Poly([0, 1], EXACT)
    f = RatFunc(Poly([1], EXACT), x, 1)
    g = RatFunc(Poly([1], EXACT), x - 1, 1)
    h = f + g
    assert h.eval(2, 0) == Fraction(3, 2)
    assert (f * f).power == 2
    assert (f - f).num.is_zero


def test_ratfunc_pole():
    f = RatFunc(Poly([1], EXACT), Poly([0, 1], EXACT), 1)
    with pytest.raises(PoleError):
        f.eval(0)


def test_exact_roots_are_fractions():
    x = Poly([0, 1], EXACT)
    p = (x - 1) * (x - 2) * (x - Fraction(1, 3))
    assert poly_real_roots(p) == [Fraction(1, 3), 1, 2]
    assert poly_real_roots(p, (0.5, 5)) == [1, 2]
    assert all(root_certificate(p, r) == 0 for r in poly_real_roots(p))


def test_repeated_roots_reported_once():
    x = Poly([0, 1], EXACT)
    p = (x - 1) ** 2 * (x + 2)
    assert poly_real_roots(p) == [-2, 1]
    assert poly_real_roots(p.to_float()) == pytest.approx([-2.0, 1.0], abs=1e-6)


def test_irrational_roots():
    p = Poly([-2, 0, 1], EXACT)
    roots = poly_real_roots(p)
    assert [float(r) for r in roots] == pytest.approx([-np.sqrt(2), np.sqrt(2)], abs=1e-11)
    assert poly_real_roots(Poly([1, 0, 1], EXACT)) == []


def test_float_roots():
    x = Poly([0.0, 1.0], FLOAT)
    p = (x - 0.5) * (x - 3.0) * (x + 7.0)
    roots = poly_real_roots(p)
    assert roots == pytest.approx([-7.0, 0.5, 3.0], abs=1e-11)
    assert max(root_certificate(p, r) for r in roots) < 1e-10


def test_zero_polynomial_has_no_root_set():
    with pytest.raises(ZeroPolynomialError):
        poly_real_roots(Poly([], EXACT))
    assert poly_real_roots(Poly([5], EXACT)) == []


def test_division_and_gcd():
    x = Poly([0, 1], EXACT)
    a = (x - 1) * (x + 2) * (x + 2)
    q, r = poly_divmod(a, x + 2)
    assert q == (x - 1) * (x + 2)
    assert r.is_zero
    assert poly_gcd(a, a.derive()) == x + 2
    assert square_free(a) == (x - 1) * (x + 2)
    with pytest.raises(DomainError):
        poly_gcd(a.to_float(), a.derive().to_float())


def test_sturm_count():
    x = Poly([0, 1], EXACT)
    p = (x - 1) * (x - 2) * (x - 3)
    seq = sturm_sequence(p)
    assert sturm_count(seq, 0, 10) == 3
    assert sturm_count(seq, Fraction(3, 2), 3) == 2
    assert sturm_count(seq, 3, 10) == 0


def _random_poly(rng, degree, mode=EXACT):
    coeffs = list(rng.randint(-9, 10, size=degree)) + [rng.randint(1, 10)]
    return Poly([int(c) for c in coeffs], mode)


def _random_fraction(rng, lo, hi):
    return Fraction(int(rng.randint(lo * 97, hi * 97)), 97)


@pytest.mark.parametrize('seed', range(5))
def test_product_matches_convolution(seed):
    rng = np.random.RandomState(seed)
    a, b = _random_poly(rng, rng.randint(0, 6)), _random_poly(rng, rng.randint(0, 6))
    expected = np.convolve([int(c) for c in a.coeffs], [int(c) for c in b.coeffs])
    assert list((a * b).coeffs) == [int(c) for c in expected]
    assert (a * b).degree == a.degree + b.degree
    assert (a - a).is_zero and (a - a).coeffs == ()


@pytest.mark.parametrize('seed', range(5))
def test_derivative_is_linear(seed):
    rng = np.random.RandomState(seed)
    a, b = _random_poly(rng, 5), _random_poly(rng, 3)
    assert poly_derive(a.scale(2) + b.scale(-3)) == poly_derive(a).scale(2) - poly_derive(b).scale(3)
    assert poly_derive(a * b) == poly_derive(a) * b + a * poly_derive(b)


def test_param_poly_derivative_in_either_variable():
    rng = np.random.RandomState(7)
    f = ParamPoly([_random_poly(rng, 2), _random_poly(rng, 1), _random_poly(rng, 3)], EXACT)
    for _ in range(20):
        x0, p0 = _random_fraction(rng, -3, 3), _random_fraction(rng, -3, 3)
        assert poly_derive(f, 'x')(x0, p0) == f.eval_p(p0).derive()(x0)
        assert poly_derive(f, 'parameter')(x0, p0) == f.eval_x(x0).derive()(p0)


def test_collapse_order_does_not_matter():
    rng = np.random.RandomState(11)
    f = ParamPoly([_random_poly(rng, k % 4) for k in range(5)], EXACT)
    for _ in range(50):
        x0, p0 = _random_fraction(rng, -2, 2), _random_fraction(rng, -2, 2)
        assert f.eval_x(x0)(p0) == f.eval_p(p0)(x0)


def test_quotient_rule_at_random_points():
    rng = np.random.RandomState(3)
    num = ParamPoly([_random_poly(rng, 1), _random_poly(rng, 2), _random_poly(rng, 0)], EXACT)
    base = Poly([-1, 0, 1], EXACT)
    f = RatFunc(num, base, 2)
    df = ratfunc_derive(f)
    den = base ** 2
    checked = 0
    while checked < 100:
        x0, p0 = _random_fraction(rng, -3, 3), _random_fraction(rng, -3, 3)
        if den(x0) == 0:
            continue
        n_x = num.eval_p(p0)
        expected = (n_x.derive()(x0) * den(x0) - n_x(x0) * den.derive()(x0)) / den(x0) ** 2
        assert df.eval(x0, p0) == expected
        checked += 1


def test_quotient_rule_against_central_difference():
    rng = np.random.RandomState(5)
    f = RatFunc(ParamPoly([Poly([1, 2], FLOAT), Poly([0.5], FLOAT)], FLOAT), Poly([1.0, 0.0, 1.0], FLOAT), 1)
    df = f.derive()
    h = 1e-6
    for x0, p0 in zip(rng.uniform(-2, 2, 20), rng.uniform(-2, 2, 20)):
        numeric = (f.eval(x0 + h, p0) - f.eval(x0 - h, p0)) / (2 * h)
        assert df.eval(x0, p0) == pytest.approx(numeric, rel=1e-6, abs=1e-8)


def test_shift_moves_the_origin():
    p = Poly([3, -1, 0, 2], EXACT)
    shifted = p.shift(Fraction(3, 2))
    for h in (Fraction(0), Fraction(1, 3), Fraction(-2)):
        assert shifted(h) == p(Fraction(3, 2) + h)


def test_taylor_coefficients_of_reciprocal():
    f = RatFunc(Poly([1], EXACT), Poly([0, 1], EXACT), 1)
    series = f.taylor(2, 5)
    assert [c(0) for c in series] == [Fraction((-1) ** k, 2 ** (k + 1)) for k in range(6)]
    with pytest.raises(PoleError):
        f.taylor(0, 3)


def test_taylor_coefficients_keep_the_parameter():
    # (p + x) / (x (1 - x)) around 1/2
    p = ParamPoly.parameter(EXACT)
    x = ParamPoly.from_poly(Poly([0, 1], EXACT))
    f = RatFunc(p + x, Poly([0, 1, -1], EXACT), 1)
    series = f.taylor(Fraction(1, 2), 3)
    assert series[0] == Poly([2, 4], EXACT)
    assert series[1] == Poly([4], EXACT)
    assert f.to_mode(FLOAT).taylor(0.5, 1)[0] == Poly([2.0, 4.0], FLOAT)


def test_roots_far_from_the_origin():
    roots = poly_real_roots(Poly([-10 ** 6, 0, 1], EXACT))
    assert roots == [-1000, 1000]
