"""One test per acceptance criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or under pytest, where
the lines are repeated in the terminal summary.
"""

import math
from fractions import Fraction

import pytest

from shiftlog.cli import EXIT_HYPOTHESIS, main, run_table
from shiftlog.exact import d_n, kappa_n, nu_n
from shiftlog.inputs import parse_beta
from shiftlog.measure import HYPOTHESIS_FAILED
from shiftlog.asymptotics import perron_report
from shiftlog.pade import build_explicit, determinant_check, pade_order_check, recurrence_pairs
from shiftlog.verify import (
    convergence_rate,
    denominator_gap,
    heights_suite,
    rational_values,
)

XS = [Fraction(0), Fraction(1, 3), Fraction(1, 5), Fraction(2, 7)]
NMAX = 40


@pytest.fixture(scope="module")
def table_rows():
    return run_table()


@pytest.fixture(scope="module")
def pade_grid():
    return {x: ([build_explicit(n, x) for n in range(NMAX + 2)], recurrence_pairs(NMAX, x)) for x in XS}


def test_table_reproduction(report, table_rows):
    bad = [f"{r.label} x={r.x}: {v} vs {r.printed}" for r, s, v, ok in table_rows if not ok]
    passed = not bad
    report("table reproduction, 27 rows within one unit of the last printed digit", passed,
           f"{27 - len(bad)}/27 match" + (f"; mismatches: {'; '.join(bad)}" if bad else ""))
    assert passed, bad


def test_exact_pade_order(report, pade_grid):
    bad = [(n, x) for x, (ex, _) in pade_grid.items() for n in range(NMAX + 1) if not pade_order_check(n, x, ex[n])]
    report("exact Pade order, n <= 40, x in {0,1/3,1/5,2/7}", not bad, f"failures {bad}" if bad else "")
    assert not bad


def test_recurrence_explicit_equivalence(report, pade_grid):
    bad = [
        (n, x)
        for x, (ex, rec) in pade_grid.items()
        for n in range(NMAX + 1)
        if ex[n].Q != rec[n].Q or ex[n].P != rec[n].P
    ]
    report("recurrence equals explicit Q_n, P_n coefficientwise", not bad, f"failures {bad}" if bad else "")
    assert not bad


def test_determinant_nonvanishing(report, pade_grid):
    bad = [
        (n, x)
        for x, (ex, _) in pade_grid.items()
        for n in range(NMAX + 1)
        if determinant_check(n, x, (ex[n], ex[n + 1])).is_zero()
    ]
    report("Q_n P_{n+1} - Q_{n+1} P_n nonzero for n <= 40", not bad, f"failures {bad}" if bad else "")
    assert not bad


PERRON_BETAS = ["poly:-2,1", "field:-2,0,1;expr=-6-5*Y;root=near:1.41421", "poly:4,0,1;root=near:2i"]


def test_perron_rates(report):
    worst_q, worst_r, lines = 0.0, 0.0, []
    for text in PERRON_BETAS:
        num = parse_beta(text).resolve(128).number
        for x in (Fraction(0), Fraction(1, 3)):
            rep = perron_report(num, x, n_max=2000, j_max=12)
            q = max(c.q_deviation for c in rep.conjugates)
            worst_q, worst_r = max(worst_q, q), max(worst_r, rep.r_deviation)
            lines.append(f"{text} x={x}: q {q:.2e} r {rep.r_deviation:.2e}")
    passed = worst_q <= 0.02 and worst_r <= 0.03
    report("Perron/Pituk rates (Q within 2% at n=2000, R within 3% over 2^j <= 4096)", passed,
           f"worst Q deviation {worst_q:.2e}, worst R deviation {worst_r:.2e}")
    assert passed, lines


def test_convergence_rate(report):
    rate, target = convergence_rate(2, 0, 500)
    assert math.isclose(target, -2 * math.log(3 + 2 * math.sqrt(2)), rel_tol=1e-12)
    dev = abs(rate / target - 1)
    passed = dev <= 0.03
    report("convergence of Theta_n to log 2 at rate -log E, n=500, beta=2", passed, f"deviation {dev:.2e}")
    assert passed


def test_height_rate(report):
    [res] = heights_suite(parse_beta("poly:-2,1"), 0, 50, 200, 0.05)
    report("h(Theta_n)/n <= log Q/d + 0.05 for 50 <= n <= 200, beta=2", res.passed,
           f"max {res.value:.4f} vs bound {res.threshold:.4f}")
    assert res.passed


def test_integrality(report, pade_grid):
    bad_coeffs = []
    for x, (ex, _) in pade_grid.items():
        for n in range(1, NMAX + 1):
            k = x.denominator * nu_n(x, n) * d_n(x, n)
            if any((c * k).denominator != 1 for c in ex[n].Q.coeffs + ex[n].P.coeffs):
                bad_coeffs.append((n, x))
    bad_values = []
    for x in XS:
        for beta in (2, 3, 2**24):
            q, p = rational_values(beta, x, NMAX)
            for n in range(1, NMAX + 1):
                k = kappa_n(1, x, n)
                if (k * q[n]).denominator != 1 or (k * p[n]).denominator != 1:
                    bad_values.append((n, x, beta))
    passed = not bad_coeffs and not bad_values
    report("integrality of den(x) nu_n d_n Q_n, P_n and kappa_n Q_n(beta), kappa_n P_n(beta)", passed,
           f"coefficient failures {bad_coeffs[:5]}, value failures {bad_values[:5]}" if not passed else "")
    assert passed


def test_denominator_constant_soft(report):
    gaps = {x: denominator_gap(x, 3000) for x in (Fraction(1, 3), Fraction(1, 5))}
    rel = {x: g / ld for x, (g, ld) in gaps.items()}
    passed = all(r <= 0.15 for r in rel.values())
    report("soft: |log kappa_n(1,x)/n - log Delta(1,x)| <= 0.15 log Delta at n=3000, x in {1/3,1/5}", passed,
           ", ".join(f"x={x}: {r:.3f}" for x, r in rel.items()))
    assert passed, rel


def test_hypothesis_gate(report, table_rows, capsys):
    code = main(["measure", "--poly", "1,-6,1"])
    capsys.readouterr()
    rejected = code == EXIT_HYPOTHESIS
    gated = [r.label for r, status, _, _ in table_rows if status == HYPOTHESIS_FAILED]
    passed = rejected and not gated
    report("hypothesis gate rejects 3+2sqrt2 with its exit code and admits all 27 table inputs", passed,
           f"exit code {code}, rejected table rows {gated}")
    assert passed


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
