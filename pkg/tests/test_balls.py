"""Containment: every ball operation must enclose the exact (or 4x-precision) value."""

from fractions import Fraction

import mpmath
from hypothesis import given
from hypothesis import strategies as st

from shiftlog.balls import ComplexBall, RealBall, mpf_to_fraction

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**6)
nonzero = rationals.filter(lambda q: q != 0)
positive = rationals.filter(lambda q: q > 0)
precs = st.sampled_from([53, 64, 113, 200])


def holds(ball: RealBall, q: Fraction) -> bool:
    return abs(q - mpf_to_fraction(ball.mid)) <= mpf_to_fraction(ball.rad)


def cholds(ball: ComplexBall, re: Fraction, im: Fraction) -> bool:
    dr = re - mpf_to_fraction(ball.mid.real)
    di = im - mpf_to_fraction(ball.mid.imag)
    return dr * dr + di * di <= mpf_to_fraction(ball.rad) ** 2


def oracle(fn, q: Fraction, prec: int):
    with mpmath.workprec(4 * prec):
        return fn(mpmath.mpf(q.numerator) / q.denominator)


@given(rationals, rationals, precs)
def test_real_arithmetic_contains_exact(a, b, prec):
    A, B = RealBall.from_rational(a, prec), RealBall.from_rational(b, prec)
    assert holds(A, a) and holds(B, b)
    assert holds(A + B, a + b)
    assert holds(A - B, a - b)
    assert holds(A * B, a * b)
    if b:
        assert holds(A / B, a / b)


@given(rationals, nonzero, precs)
def test_real_composite_expression(a, b, prec):
    A, B = RealBall.from_rational(a, prec), RealBall.from_rational(b, prec)
    assert holds((A * A - B) / B + 3, (a * a - b) / b + 3)


@given(positive, precs)
def test_real_transcendentals(q, prec):
    Q = RealBall.from_rational(q, prec)
    assert Q.log().contains(oracle(mpmath.log, q, prec))
    assert Q.sqrt().contains(oracle(mpmath.sqrt, q, prec))
    small = RealBall.from_rational(q / 10**5, prec)
    assert small.exp().contains(oracle(mpmath.exp, q / 10**5, prec))


@given(rationals, rationals, rationals, rationals, precs)
def test_complex_arithmetic_contains_exact(a, b, c, d, prec):
    X = ComplexBall.from_rational(a, prec, b)
    Y = ComplexBall.from_rational(c, prec, d)
    assert cholds(X * Y, a * c - b * d, a * d + b * c)
    assert cholds(X + Y, a + c, b + d)
    n = c * c + d * d
    if n:
        assert cholds(X / Y, (a * c + b * d) / n, (b * c - a * d) / n)


@given(rationals, rationals, precs)
def test_complex_sqrt_squares_back(a, b, prec):
    X = ComplexBall.from_rational(a, prec, b)
    S = X.sqrt()
    assert (S * S).overlaps(X)
    with mpmath.workprec(4 * prec):
        z = mpmath.mpc(mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(b.numerator) / b.denominator)
        r = mpmath.sqrt(z)
    assert S.contains(r) or S.contains(-r)


@given(rationals, rationals, precs)
def test_complex_abs_bounds(a, b, prec):
    X = ComplexBall.from_rational(a, prec, b)
    with mpmath.workprec(4 * prec):
        n = a * a + b * b
        m = mpmath.sqrt(mpmath.mpf(n.numerator) / n.denominator)
    assert X.abs().contains(m)
    assert X.abs_lower() <= m <= X.abs_upper()


@given(rationals, st.integers(0, 12), precs)
def test_power_matches_repeated_product(a, k, prec):
    X = ComplexBall.from_rational(a, prec, Fraction(1, 3))
    assert cholds(X**k, *_cpow(a, Fraction(1, 3), k))


def _cpow(re, im, k):
    r, i = Fraction(1), Fraction(0)
    for _ in range(k):
        r, i = r * re - i * im, r * im + i * re
    return r, i


def test_exact_representable_has_zero_radius():
    assert RealBall.from_rational(Fraction(3, 8), 64).rad == 0
    assert RealBall.from_rational(Fraction(1, 3), 64).rad > 0
    assert ComplexBall.from_rational(2, 64, 1).is_exact()


def test_certain_comparisons():
    third = RealBall.from_rational(Fraction(1, 3), 64)
    assert third.gt(Fraction(33, 100)) and third.lt(Fraction(34, 100))
    assert not third.gt(third.mid)
    assert (third - third).contains_zero()


def test_disjoint_and_overlap():
    a = ComplexBall.from_rational(0, 64)
    b = ComplexBall.from_rational(Fraction(1, 10**15), 64)
    assert a.disjoint(b) and not a.overlaps(b)
    wide = ComplexBall(a.mid, mpmath.mpf(1), 64)
    assert wide.overlaps(b) and wide.contains_ball(b)
