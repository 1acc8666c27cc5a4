import math
from fractions import Fraction

import pytest

from shiftlog.exact import d_n
from shiftlog.verify import (
    PropertyResult,
    denominators_suite,
    integrality_suite,
    pade_suite,
    rational_values,
    theta_heights,
)


def test_pade_suite_small_grid():
    res = pade_suite(10, (Fraction(0), Fraction(2, 7)))
    assert len(res) == 10 and all(r.passed for r in res)
    assert all(isinstance(r.to_dict()["params"]["x"], str) for r in res)


def test_integrality_suite_small():
    assert all(r.passed for r in integrality_suite(betas=(2, 5), nmax=15, xs=(Fraction(1, 3),)))


def test_rational_values_log_two():
    q, p = rational_values(2, 0, 30)
    assert abs(float(p[30] / q[30]) - math.log(2)) < 1e-20


def test_theta_heights_bounded_by_integrality():
    hs = theta_heights(2, 0, [20, 40])
    assert all(0 < h < 3 for h in hs.values())


@pytest.mark.parametrize("x,n", [(Fraction(1, 3), 20000), (Fraction(1, 5), 20000)])
def test_lcm_of_progression_growth_constant(x, n):
    """log d_n(x)/n tends to (q/phi(q)) * sum_{j<=q, (j,q)=1} 1/j, the lcm constant of a progression."""
    q = x.denominator
    units = [j for j in range(1, q + 1) if math.gcd(j, q) == 1]
    limit = q / len(units) * sum(1 / j for j in units)
    assert math.log(d_n(x, n)) / n == pytest.approx(limit, rel=2e-3)


def test_denominators_suite_reports_values():
    res = denominators_suite((Fraction(1, 3),), n=500)
    assert isinstance(res[0], PropertyResult) and res[0].threshold == 0.15
    assert res[0].value > 0
