import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from shiftlog.exact import Poly
from shiftlog.numfield import (
    CertificationError,
    FieldElement,
    RootIndex,
    RootNear,
    SelectionError,
    algebraic_number,
    count_real_roots,
    count_roots_in_unit_interval,
    den_algebraic,
    element_charpoly,
    element_minpoly,
    find_conjugates,
    rational_height,
    select_root,
    weil_height,
)

Y = sympy.Symbol("Y")
T = sympy.Symbol("T")

int_polys = st.lists(st.integers(-20, 20), min_size=2, max_size=7).filter(lambda c: c[-1] != 0)
sqf_polys = int_polys.filter(lambda c: sympy.Poly(list(reversed(c)), Y).is_sqf)


def sym(p: Poly):
    return sympy.Poly(list(reversed(p.int_coeffs())), Y)


@given(int_polys)
def test_sturm_count_matches_sympy(c):
    p = Poly(c)
    assert count_real_roots(p) == len(set(sympy.real_roots(sym(p))))


@given(sqf_polys)
def test_unit_interval_count_matches_sympy(c):
    p = Poly(c)
    expected = sympy.Poly(sym(p)).count_roots(0, 1)
    distinct = len({r for r in sympy.real_roots(sym(p)) if 0 <= r <= 1})
    assert count_roots_in_unit_interval(p) == distinct
    assert expected >= distinct


@given(sqf_polys)
def test_conjugates_enclose_sympy_roots(c):
    p = Poly(c)
    balls = find_conjugates(p, prec=96)
    roots = sympy.Poly(list(reversed(c)), Y).nroots(n=50, maxsteps=200)
    assert len(balls) == len(roots)
    for r in roots:
        re, im = r.as_real_imag()
        with mpmath.workprec(200):
            z = mpmath.mpc(str(re), str(im))
        assert sum(b.contains(z) for b in balls) == 1
    n_real = count_real_roots(p)
    assert sum(b.mid.imag == 0 for b in balls) == n_real


def test_conjugates_of_x2_minus_2():
    balls = find_conjugates(Poly((-2, 0, 1)), prec=128)
    vals = sorted(float(b.mid.real) for b in balls)
    assert vals == pytest.approx([-math.sqrt(2), math.sqrt(2)], abs=1e-30)


def test_clustered_roots_far_from_origin():
    p = (Poly.X() - 1000) ** 3 - 5
    balls = find_conjugates(p, prec=128)
    assert len(balls) == 3
    with mpmath.workprec(300):
        real_root = 1000 + mpmath.cbrt(5)
    assert sum(b.contains(real_root) for b in balls) == 1


def test_non_squarefree_rejected():
    with pytest.raises(ValueError):
        find_conjugates(Poly((1, -2, 1)))


def test_precision_cap_raises():
    with pytest.raises(CertificationError):
        find_conjugates(Poly((-2, 0, 1)), target_radius=Fraction(1, 2**400), prec=64, cap=128)


@pytest.mark.parametrize(
    "coeffs,den",
    [((-2, 0, 3, 0, 2), 2), ((2, 0, -3, 0, 2), 2), ((-7, 0, 0, 6), 6), ((-2, 0, 1), 1), ((1, -6, 5), 5)],
)
def test_den_algebraic(coeffs, den):
    assert den_algebraic(Poly(coeffs)) == den


@given(int_polys.filter(lambda c: sympy.Poly(list(reversed(c)), Y).is_irreducible))
def test_den_makes_root_integral(c):
    p = Poly(c).primitive()
    m = den_algebraic(p)
    # m*beta is a root of p(Y/m) * m^d, which must be monic-integral up to sign
    d = p.degree
    scaled = [p[i] * m ** (d - i) for i in range(d + 1)]
    lc = scaled[-1]
    assert all((s / lc).denominator == 1 for s in scaled)
    for k in range(1, m):
        if m % k == 0:
            sc = [p[i] * k ** (d - i) for i in range(d + 1)]
            assert not all((s / sc[-1]).denominator == 1 for s in sc)


def test_selectors():
    balls = find_conjugates(Poly((-2, 0, 1)))
    pos = select_root(balls, RootNear(1.4))
    assert balls[pos].mid.real > 0
    assert select_root(balls, RootIndex(0)) == 0
    with pytest.raises(SelectionError):
        select_root(balls, RootIndex(5))
    with pytest.raises(SelectionError):
        select_root(balls, RootNear(0.0))


def test_algebraic_number_reality():
    assert algebraic_number(Poly((-2, 0, 1)), RootNear(1.41)).is_real()
    assert not algebraic_number(Poly((4, 0, 1)), RootNear(2j)).is_real()


field_elems = st.lists(st.builds(Fraction, st.integers(-20, 20), st.integers(1, 5)), min_size=1, max_size=3)
FIELDS = [(-2, 0, 1), (-5, 0, 0, 1), (2, 0, -3, 0, 2), (-3, 0, 0, 0, 1)]


@given(st.sampled_from(FIELDS), field_elems)
def test_charpoly_matches_resultant(field, rep):
    """char poly of g(gamma) = Res_Y(f(Y), T - g(Y)) / lc(f)^deg g, normalised to monic."""
    f = Poly(field)
    e = FieldElement(f, Poly(rep))
    cp = element_charpoly(e)
    g = sum(sympy.Rational(c.numerator, c.denominator) * Y**i for i, c in enumerate(e.rep.coeffs))
    fy = sum(c * Y**i for i, c in enumerate(field))
    res = sympy.Poly(sympy.resultant(fy, T - g, Y), T, domain="QQ").monic()
    ours = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in cp.monic().coeffs])), T, domain="QQ")
    assert ours == res


@given(st.sampled_from(FIELDS), field_elems)
def test_minpoly_is_irreducible_root_of_resultant(field, rep):
    """min poly is irreducible over Q and its k-th power is the char poly from the resultant."""
    f = Poly(field)
    e = FieldElement(f, Poly(rep))
    mp, k = element_minpoly(e)
    g = sum(sympy.Rational(c.numerator, c.denominator) * Y**i for i, c in enumerate(e.rep.coeffs))
    fy = sum(c * Y**i for i, c in enumerate(field))
    res = sympy.Poly(sympy.resultant(fy, T - g, Y), T, domain="QQ").monic()
    ours = sympy.Poly(list(reversed(mp.int_coeffs())), T, domain="QQ").monic()
    assert ours.is_irreducible
    assert ours**k == res
    assert mp.degree * k == f.degree


def test_field_arithmetic():
    f = Poly((-2, 0, 1))
    y = FieldElement.generator(f)
    assert y * y == FieldElement(f, Poly((2,)))
    inv = 1 / (y + 3)
    assert inv * (y + 3) == FieldElement(f, Poly((1,)))
    assert (y + 1) ** -2 * (y + 1) ** 2 == FieldElement(f, Poly((1,)))


def test_weil_heights():
    f = Poly((-2, 0, 1))
    y = FieldElement.generator(f)
    with mpmath.workprec(400):
        assert weil_height(y).contains(mpmath.log(2) / 2)
    # h(1/a) = h(a)
    h1, h2 = weil_height(y + 3), weil_height(1 / (y + 3))
    assert h1.overlaps(h2)
    # h(3+2sqrt2) = log(3+2sqrt2)/2 (a unit)
    with mpmath.workprec(400):
        unit = mpmath.log(3 + 2 * mpmath.sqrt(2)) / 2
    assert weil_height(3 + 2 * y).contains(unit)
    with mpmath.workprec(400):
        assert rational_height(Fraction(-7, 3)).contains(mpmath.log(7))
    assert rational_height(0).contains(0)


@given(st.fractions(max_denominator=10**4).filter(lambda q: q != 0))
def test_rational_height_is_log_max(q):
    expected = math.log(max(abs(q.numerator), q.denominator))
    assert abs(float(rational_height(q).mid) - expected) < 1e-12
