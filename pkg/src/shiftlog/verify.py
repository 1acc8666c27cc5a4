"""Property suites behind ``shiftlog verify``: each returns a list of
PropertyResult records with the parameters that were checked."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath

from .asymptotics import char_roots, perron_report
from .exact import Poly, as_rational, d_n, kappa_n, nu_n, pochhammer
from .inputs import BetaSpec
from .measure import certify, compute_Delta
from .numfield import FieldElement, rational_height, weil_height
from .pade import (
    build_explicit,
    determinant_check,
    pade_order_check,
    recurrence_coeffs,
    recurrence_pairs,
    step_recurrence,
)

DEFAULT_XS = (Fraction(0), Fraction(1, 3), Fraction(1, 5), Fraction(2, 7))


@dataclass
class PropertyResult:
    suite: str
    name: str
    passed: bool
    params: dict = field(default_factory=dict)
    value: object = None
    threshold: object = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = {k: str(v) if isinstance(v, Fraction) else v for k, v in self.params.items()}
        return d


def _clearing_factor(p: Poly) -> int:
    out = 1
    for c in p.coeffs:
        out = math.lcm(out, c.denominator)
    return out


def pade_suite(nmax: int = 40, xs=DEFAULT_XS) -> list[PropertyResult]:
    out = []
    for x in map(as_rational, xs):
        explicit = [build_explicit(n, x) for n in range(nmax + 2)]
        rec = recurrence_pairs(nmax, x)
        bad_rec = [n for n in range(nmax + 1) if rec[n].Q != explicit[n].Q or rec[n].P != explicit[n].P]
        bad_order = [n for n in range(nmax + 1) if not pade_order_check(n, x, explicit[n])]
        bad_det = [
            n for n in range(nmax + 1) if determinant_check(n, x, (explicit[n], explicit[n + 1])).is_zero()
        ]
        explicit.pop()
        bad_int, ratios = [], []
        for n, pr in enumerate(explicit):
            k = x.denominator * nu_n(x, n) * (d_n(x, n) if n else 1)
            if any((c * k).denominator != 1 for c in pr.Q.coeffs + pr.P.coeffs):
                bad_int.append(n)
            m = math.lcm(_clearing_factor(pr.Q), _clearing_factor(pr.P))
            ratios.append(k // m if k % m == 0 else None)
        bad_shape = [
            n
            for n, pr in enumerate(explicit)
            if pr.Q.degree != n or pr.Q.lc != _q_leading(n, x) or pr.P.degree != n - 1
        ]
        params = {"x": x, "nmax": nmax}
        out += [
            PropertyResult("pade", "recurrence_equals_explicit", not bad_rec, params, bad_rec),
            PropertyResult("pade", "pade_order", not bad_order, params, bad_order),
            PropertyResult("pade", "determinant_nonzero", not bad_det, params, bad_det),
            PropertyResult("pade", "integrality", not bad_int, dict(params, clearing_quotients=ratios[-5:]), bad_int),
            PropertyResult("pade", "degree_and_leading_coefficient", not bad_shape, params, bad_shape),
        ]
    return out


def _q_leading(n: int, x: Fraction) -> Fraction:
    return pochhammer(n + 1 + x, n) / math.factorial(n)


def rational_values(beta, x, nmax: int):
    """Exact (Q_n(beta), P_n(beta)) for n = 0..nmax via the recurrence."""
    b, x = as_rational(beta), as_rational(x)
    q = [Fraction(1), (2 + x) * b - (1 + x)]
    p = [Fraction(0), 2 + x]
    for n in range(1, nmax):
        c = recurrence_coeffs(n, x)
        q.append(step_recurrence(q[n - 1], q[n], c, b))
        p.append(step_recurrence(p[n - 1], p[n], c, b))
    return q, p


def integrality_suite(betas=(2, 3, 2**24), nmax: int = 40, xs=DEFAULT_XS) -> list[PropertyResult]:
    out = []
    for x in map(as_rational, xs):
        for beta in betas:
            q, p = rational_values(beta, x, nmax)
            bad = [
                n
                for n in range(1, nmax + 1)
                if (kappa_n(1, x, n) * q[n]).denominator != 1 or (kappa_n(1, x, n) * p[n]).denominator != 1
            ]
            out.append(PropertyResult("integrality", "kappa_clears_values", not bad, {"beta": beta, "x": x, "nmax": nmax}, bad))
    return out


def perron_suite(beta: BetaSpec, xs=(0,), nmax: int = 2000, jmax: int = 12, tol_q=0.02, tol_r=0.03):
    out = []
    num = beta.resolve(128).number
    for x in map(as_rational, xs):
        rep = perron_report(num, x, nmax, jmax)
        params = {"beta": beta.label, "x": x, "nmax": nmax}
        for c in rep.conjugates:
            pc = dict(params, conjugate=c.index)
            out.append(PropertyResult("perron", "q_rate", c.q_deviation <= tol_q, pc, c.q_deviation, tol_q))
            out.append(PropertyResult("perron", "p_rate", c.p_deviation <= tol_q, pc, c.p_deviation, tol_q))
        out.append(
            PropertyResult("perron", "r_rate", rep.r_deviation <= tol_r, dict(params, jmax=jmax), rep.r_deviation, tol_r)
        )
    return out


def theta_heights(beta, x, ns) -> dict[int, float]:
    """h(Theta_n)/n with Theta_n = P_n(beta)/Q_n(beta) for rational beta."""
    q, p = rational_values(beta, x, max(ns))
    return {n: float(rational_height(p[n] / q[n]).mid) / n for n in ns}


def field_theta_heights(min_poly, x, ns) -> dict[int, float]:
    """Same for algebraic beta, with Theta_n in Q(beta) = Q[Y]/(min_poly)."""
    x = as_rational(x)
    y = FieldElement.generator(min_poly)
    q, p = [FieldElement(min_poly, Poly((1,))), (2 + x) * y - (1 + x)], [y * 0, y * 0 + (2 + x)]
    for n in range(1, max(ns)):
        c = recurrence_coeffs(n, x)
        q.append(step_recurrence(q[n - 1], q[n], c, y))
        p.append(step_recurrence(p[n - 1], p[n], c, y))
    return {n: float(weil_height(p[n] / q[n]).mid) / n for n in ns}


def heights_suite(beta: BetaSpec, x=0, n_lo: int = 50, n_hi: int = 200, slack: float = 0.05):
    x = as_rational(x)
    cert = certify(beta, x)
    bound = float(cert.log_Q.mid) / cert.d + slack
    ns = list(range(n_lo, n_hi + 1))
    num = beta.resolve(128).number
    if num.degree == 1:
        root = -num.min_poly[0] / num.min_poly[1]
        hs = theta_heights(root, x, ns)
    else:
        hs = field_theta_heights(num.min_poly, x, ns)
    worst = max(hs.values())
    bad = [n for n, h in hs.items() if h > bound]
    return [
        PropertyResult(
            "heights", "height_rate_bound", not bad, {"beta": beta.label, "x": x, "n": [n_lo, n_hi]}, worst, bound
        )
    ]


def convergence_rate(beta, x, n: int) -> tuple[float, float]:
    """((log|f(beta) - Theta_n|)/n, -log E) for rational beta > 1."""
    b, x = as_rational(beta), as_rational(x)
    q, p = rational_values(b, x, n)
    theta = p[n] / q[n]
    cr = char_roots(b)
    log_e = 2 * float(cr.rho2.log().mid)
    bits = int(n * log_e / math.log(2)) + 256
    with mpmath.workprec(bits):
        z = mpmath.mpf(b.numerator) / b.denominator
        if x == 0:
            fz = mpmath.log(z / (z - 1))
        else:
            xx = mpmath.mpf(x.numerator) / x.denominator
            fz = (1 + xx) / z * mpmath.lerchphi(1 / z, 1, 1 + xx)
        err = abs(fz - mpmath.mpf(theta.numerator) / theta.denominator)
        return float(mpmath.log(err)) / n, -log_e


def convergence_suite(beta=2, x=0, n: int = 500, tol: float = 0.03):
    rate, target = convergence_rate(beta, x, n)
    dev = abs(rate / target - 1)
    return [PropertyResult("heights", "theta_convergence_rate", dev <= tol, {"beta": beta, "x": x, "n": n}, dev, tol)]


def denominator_gap(x, n: int) -> tuple[float, float]:
    """(|log kappa_n(1,x)/n - log Delta(1,x)|, log Delta(1,x))."""
    x = as_rational(x)
    lk = math.log(kappa_n(1, x, n)) / n
    ld = float(compute_Delta(1, x).log(128).mid)
    return abs(lk - ld), ld


def denominators_suite(xs=(Fraction(1, 3), Fraction(1, 5)), n: int = 3000, rel: float = 0.15):
    out = []
    for x in map(as_rational, xs):
        gap, ld = denominator_gap(x, n)
        out.append(
            PropertyResult("denominators", "kappa_growth", gap <= rel * ld, {"x": x, "n": n}, gap / ld, rel)
        )
    return out
