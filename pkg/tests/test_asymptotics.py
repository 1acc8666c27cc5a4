import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shiftlog.asymptotics import (
    HypothesisFailure,
    char_roots,
    growth_rate,
    perron_report,
    run_recurrence,
)
from shiftlog.balls import ComplexBall
from shiftlog.exact import Poly
from shiftlog.numfield import RootIndex, algebraic_number
from shiftlog.pade import PrecisionExhausted, build_explicit

coords = st.fractions(max_denominator=100).filter(lambda q: abs(q) < 100)


@given(coords, coords)
def test_char_roots_vieta(a, b):
    z = ComplexBall.from_rational(a, 128, b)
    cr = char_roots(z)
    assert (cr.lambda1 * cr.lambda2).overlaps(ComplexBall.from_rational(1, 128))
    assert (cr.lambda1 + cr.lambda2).overlaps(2 * (2 * z - 1))
    assert cr.rho1.mid <= cr.rho2.mid


def test_char_roots_at_two():
    cr = char_roots(Fraction(2))
    with mpmath.workprec(300):
        assert cr.rho2.contains(3 + 2 * mpmath.sqrt(2))
        assert cr.rho1.contains(3 - 2 * mpmath.sqrt(2))
    assert cr.distinct


def test_char_roots_coincide_on_unit_interval():
    assert not char_roots(Fraction(1, 2)).distinct


def test_run_recurrence_matches_exact_values():
    x = Fraction(1, 3)
    z = Fraction(3)
    seeds = (build_explicit(0, x).Q(z), build_explicit(1, x).Q(z))
    samples = run_recurrence(x, z, seeds, 30, 128)
    exact = {n: math.log(abs(float(build_explicit(n, x).Q(z)))) for n in (5, 17, 30)}
    got = dict(samples)
    for n, v in exact.items():
        assert got[n] == pytest.approx(v, rel=1e-12)


def test_run_recurrence_reports_precision_loss():
    with pytest.raises(PrecisionExhausted):
        run_recurrence(0, Fraction(2), (1, 3), 3000, 64)


def test_growth_rate_of_geometric_sequence():
    samples = [(n, 0.75 * n + 3.0) for n in range(1, 200)]
    est = growth_rate(samples)
    assert est.value == pytest.approx(0.75, abs=1e-12)


def test_perron_report_rational_beta():
    num = algebraic_number(Poly((-2, 1)), RootIndex(0))
    rep = perron_report(num, 0, n_max=600, j_max=9)
    log_rho2 = math.log(3 + 2 * math.sqrt(2))
    assert rep.conjugates[0].q_rate.value == pytest.approx(log_rho2, rel=0.02)
    assert rep.conjugates[0].p_rate.value == pytest.approx(log_rho2, rel=0.02)
    assert rep.r_rate.value == pytest.approx(-log_rho2, rel=0.03)
    d = rep.to_dict()
    assert d["conjugates"][0]["index"] == 0 and d["r_deviation"] == rep.r_deviation


def test_perron_refuses_conjugate_in_unit_interval():
    num = algebraic_number(Poly((1, -6, 1)), RootIndex(1))
    with pytest.raises(HypothesisFailure):
        perron_report(num, 0, n_max=100)
