import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from shiftlog.exact import (
    LogExactConstant,
    Poly,
    SeriesOrderError,
    TruncatedSeries,
    d_n,
    euler_phi,
    factorize,
    kappa_n,
    nu,
    nu_n,
    pochhammer,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
polys = st.lists(fractions, min_size=1, max_size=6).map(Poly)
shifts = st.builds(Fraction, st.integers(0, 30), st.integers(1, 31)).filter(lambda q: q < 1)


@given(st.integers(1, 10**12))
def test_factorize_matches_sympy(n):
    assert dict(factorize(n)) == sympy.factorint(n)


@given(st.integers(1, 10**6))
def test_euler_phi_matches_sympy(m):
    assert euler_phi(m) == sympy.totient(m)


def test_factorize_large_semiprime():
    p, q = 1_000_000_007, 998_244_353
    assert factorize(p * q) == ((q, 1), (p, 1))


@given(polys, polys)
def test_poly_ring_laws(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a - b) + b == a
    if not b.is_zero():
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree


@given(polys, fractions)
def test_poly_evaluation_is_a_ring_map(a, t):
    b = a * a + 3
    assert b(t) == a(t) ** 2 + 3


def test_poly_basics():
    p = Poly((1, -3, 2))
    assert p.degree == 2 and p.lc == 2
    assert Poly(()).degree == -1
    assert p.to_str("z") == "2*z^2 - 3*z + 1"
    assert p.derivative() == Poly((-3, 4))
    assert Poly((Fraction(1, 2), Fraction(3, 4))).primitive() == Poly((2, 3))
    assert ((Poly.X() - 1) ** 2 * (Poly.X() + 2)).squarefree_part().monic() == ((Poly.X() - 1) * (Poly.X() + 2)).monic()
    assert p.compose(Poly((1, 1)))(0) == p(1)
    with pytest.raises(AttributeError):
        p.coeffs = ()


@given(shifts, st.integers(1, 60))
def test_d_n_is_lcm_of_reduced_denominators(x, n):
    brute = math.lcm(*[(1 / (k + x)).denominator for k in range(1, n + 1)])
    assert d_n(x, n) == brute


def test_d_n_at_zero_is_lcm():
    assert d_n(0, 10) == 2520


@given(shifts, st.integers(0, 40))
def test_nu_n_clears_pochhammer_over_factorial(x, n):
    # (x+1)_k / k! has denominator dividing nu_k(x); same check as the integrality of binomials
    assert (nu_n(x, n) * pochhammer(x + 1, n) / math.factorial(n)).denominator == 1


def test_nu_n_frozen():
    assert nu_n(Fraction(1, 3), 4) == 3**4 * 3**2
    assert nu_n(Fraction(1, 6), 3) == 6**3 * 2**3 * 3**1
    assert nu_n(0, 5) == 1


def test_kappa_n_frozen():
    assert kappa_n(1, 0, 3) == 6
    assert kappa_n(2, Fraction(1, 2), 2) == 2 * (2**2 * 2**2) * 15 * 2**2


def test_shift_out_of_range():
    with pytest.raises(ValueError):
        nu_n(Fraction(3, 2), 2)
    with pytest.raises(ValueError):
        d_n(-Fraction(1, 3), 2)


def test_truncated_series_product_and_order():
    a = TruncatedSeries({0: Fraction(1), -1: Fraction(1)}, order=5)
    b = TruncatedSeries({0: Fraction(1), -1: Fraction(-1)}, order=5)
    c = a * b
    assert c.coeff(0) == 1 and c.coeff(-1) == 0 and c.coeff(-2) == -1
    with pytest.raises(SeriesOrderError):
        c.coeff(-6)


def test_log_exact_constant():
    c = LogExactConstant(12, Fraction(3, 2), [(3, Fraction(1, 2))])
    assert c == LogExactConstant(4, Fraction(3, 2), [(3, Fraction(3, 2))])
    val = c.log(200)
    expected = math.log(12) + 1.5 + 0.5 * math.log(3)
    assert val.contains(val.mid) and abs(float(val.mid) - expected) < 1e-12
    assert LogExactConstant.from_json(c.to_json()) == c
    with pytest.raises(ValueError):
        LogExactConstant(-1)


def test_nu_constant():
    assert nu(Fraction(1, 6)) == LogExactConstant(6, 0, [(2, 1), (3, Fraction(1, 2))])
    assert nu(0) == LogExactConstant(1)
