"""Padé pairs (Q_n, P_n) for f(z) = (1+x) Phi_1(x, 1/z), their three-term
recurrence, and ball evaluation of f and of the remainder R_n = Q_n f - P_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .balls import ComplexBall, context, down, up
from .exact import Poly, TruncatedSeries, _check_shift, as_rational, pochhammer


class PrecisionExhausted(RuntimeError):
    def __init__(self, message: str, index: int | None = None, prec: int | None = None):
        super().__init__(message)
        self.index = index
        self.prec = prec


@dataclass(frozen=True)
class PadePair:
    n: int
    x: Fraction
    Q: Poly
    P: Poly

    def theta(self, beta) -> Fraction:
        """P_n(beta)/Q_n(beta) for rational beta."""
        b = as_rational(beta)
        return self.P(b) / self.Q(b)


def build_explicit(n: int, x) -> PadePair:
    """Q_n and P_n from their closed-form sums."""
    x = as_rational(x)
    _check_shift(x)
    if n < 0:
        raise ValueError("n must be non-negative")
    # A[j] = (n+1+x)_j / j!,  B[l] = (n-l+1+x)_l / l!,  b[k] = (k+2+x)_{n-k-1} / (n-k-1)!
    A = [Fraction(1)]
    for j in range(n + 1):
        A.append(A[-1] * (n + 1 + x + j) / (j + 1))
    B = [Fraction(1)]
    for l in range(n):
        B.append(B[-1] * (n - l + x) / (l + 1))
    q = [Fraction(0)] * (n + 1)
    for l in range(n + 1):
        q[n - l] = (-1) ** l * A[n - l] * B[l]
    a = A[1 : n + 1]
    b = [Fraction(1)] * n
    for k in range(n - 2, -1, -1):
        b[k] = b[k + 1] * (k + 2 + x) / (n - k - 1)
    p = []
    for l in range(n):
        s = Fraction(0)
        for k in range(l, n):
            s += (-1) ** (n - k - 1) * a[k] * b[k] * (1 + x) / (k - l + 1 + x)
        p.append(s)
    return PadePair(n, x, Poly(q), Poly(p))


@dataclass(frozen=True)
class RecurrenceCoeffs:
    n: int
    A: Fraction
    B: Fraction
    C: Fraction


def recurrence_coeffs(n: int, x) -> RecurrenceCoeffs:
    x = as_rational(x)
    if n < 1:
        raise ValueError("recurrence coefficients need n >= 1")
    A = (n + x + 1) * (n + 1) / ((2 * n + x + 1) * (2 * n + x + 2))
    B = (2 * n * n + (1 + x) * (2 * n + x)) / ((2 * n + x) * (2 * n + x + 2))
    C = n * (n + x) / ((2 * n + x) * (2 * n + x + 1))
    return RecurrenceCoeffs(n, A, B, C)


def step_recurrence(prev, curr, coeffs: RecurrenceCoeffs, z):
    """X_{n+1} = ((z - B_n) X_n - C_n X_{n-1}) / A_n.

    Works for Fractions, ComplexBalls and Polys (pass ``Poly.X()`` as z).
    """
    return ((z - coeffs.B) * curr - coeffs.C * prev) / coeffs.A


def recurrence_pairs(nmax: int, x) -> list[PadePair]:
    """Pairs 0..nmax generated by the recurrence from the explicit n = 0, 1 seeds."""
    x = as_rational(x)
    seeds = [build_explicit(0, x), build_explicit(1, x)]
    if nmax < 1:
        return seeds[: nmax + 1]
    out = list(seeds)
    z = Poly.X()
    for n in range(1, nmax):
        c = recurrence_coeffs(n, x)
        Q = step_recurrence(out[n - 1].Q, out[n].Q, c, z)
        P = step_recurrence(out[n - 1].P, out[n].P, c, z)
        out.append(PadePair(n + 1, x, Q, P))
    return out


# ---------------------------------------------------------------------------
# exact series checks


def f_series(x, N: int) -> TruncatedSeries:
    """f(z) = sum_{k>=0} (1+x)/(k+x+1) z^{-k-1}, known through (1/z)^N."""
    x = as_rational(x)
    _check_shift(x)
    return TruncatedSeries({-(k + 1): (1 + x) / (k + x + 1) for k in range(N)}, N)


def remainder_series(pair: PadePair, N: int) -> TruncatedSeries:
    """Q_n f - P_n, exact through (1/z)^(N - n)."""
    return TruncatedSeries.from_poly(pair.Q) * f_series(pair.x, N) - TruncatedSeries.from_poly(pair.P)


def pade_order_check(n: int, x, pair: PadePair | None = None) -> bool:
    pair = pair or build_explicit(n, x)
    s = remainder_series(pair, 2 * n + 1)
    return all(s.coeff(e) == 0 for e in range(-n, n))


def determinant_check(n: int, x, pairs: tuple[PadePair, PadePair] | None = None) -> Poly:
    a, b = pairs or (build_explicit(n, x), build_explicit(n + 1, x))
    return a.Q * b.P - b.Q * a.P


def remainder_coeff(n: int, x, l: int) -> Fraction:
    """Coefficient of z^{-l-1} in R_n."""
    x = as_rational(x)
    if l < n:
        return Fraction(0)
    prod = Fraction(1)
    for i in range(1, l + 1):
        prod *= i + x
    return math.comb(l, n) * prod * math.factorial(n) / pochhammer(x + 2, n + l)


# ---------------------------------------------------------------------------
# ball evaluation


def _upq(q: Fraction):
    return up(up(q.numerator) / down(q.denominator))


def _as_ball(z, prec: int) -> ComplexBall:
    return ComplexBall.coerce(z, prec)


def _check_outside_unit_disk(zb: ComplexBall):
    lower = zb.abs_lower()
    if not lower > 1:
        raise ValueError("evaluation needs |z| > 1 over the whole ball")
    return lower


def eval_f(x, z, err_target=None, prec: int = 128) -> ComplexBall:
    """Ball containing f(z) for |z| > 1; truncation error at most err_target."""
    x = as_rational(x)
    _check_shift(x)
    zb = _as_ball(z, prec)
    prec = zb.prec
    ctx = context(prec)
    r = _check_outside_unit_disk(zb)
    if err_target is None:
        err_target = ctx.ldexp(1, -prec)
    w = 1 / zb
    geo = up(r / down(r - 1))
    inv_r = up(1 / r)
    inv_pow = inv_r
    power = w
    total = ComplexBall(ctx.mpc(0), 0, prec)
    k = 0
    while True:
        total = total + power * ((1 + x) / (k + x + 1))
        k += 1
        power = power * w
        inv_pow = up(inv_pow * inv_r)
        # remaining terms k, k+1, ... bounded by the first one times a geometric factor
        bound = up(up(_upq((1 + x) / (k + x + 1)) * inv_pow) * geo)
        if bound <= err_target:
            return ComplexBall(total.mid, up(total.rad + bound), prec)


def _ratio_bound(n: int, x: Fraction, l: int) -> Fraction:
    """Upper bound, valid for every l' >= l, of the coefficient ratio c_{l'+1}/c_{l'}."""
    s = l + 1
    f = Fraction(s) * (s + x) / ((s - n) * (n + l + x + 2))
    # the ratio decreases towards 1 while s < 2n(n+1+x) and stays below 1 beyond
    return max(f, Fraction(1))


def _sum_remainder(n: int, x: Fraction, zb: ComplexBall, rel_target) -> ComplexBall:
    prec = zb.prec
    r = _check_outside_unit_disk(zb)
    inv_r = up(1 / r)
    w = 1 / zb
    c0 = remainder_coeff(n, x, n)
    term = w ** (n + 1) * c0
    total = term
    modulus_goal = (1 + r) / (2 * r)
    l = n
    while True:
        ratio = Fraction(l + 1) * (l + 1 + x) / ((l + 1 - n) * (n + l + x + 2))
        term = term * w * ratio
        total = total + term
        l += 1
        q = up(_upq(_ratio_bound(n, x, l)) * inv_r)
        if q <= modulus_goal:
            # next term and all later ones: |t_{l+1}| <= |t_l| q, geometric tail
            tail = up(up(term.abs_upper() * q) / down(1 - q))
            size = total.abs_lower()
            if size > 0 and tail <= rel_target * size / 4:
                return ComplexBall(total.mid, up(total.rad + tail), prec)
            if term.abs_upper() == 0:
                return ComplexBall(total.mid, up(total.rad + tail), prec)


def _sum_remainder_fast(n: int, x: Fraction, zb: ComplexBall, rel_target) -> ComplexBall:
    """Same series in plain mpc arithmetic at the ball's precision.

    Rounding is bounded a priori: every term carries at most k elementary
    roundings, each of relative size u = 2^(3-prec), so the accumulated error
    is at most 1.02 u (k_max + #terms) sum |t_l|.  The input radius is
    propagated through a bound on |R_n'| over the ball.
    """
    prec = zb.prec
    ctx = context(prec)
    r = _check_outside_unit_disk(zb)
    inv_r = up(1 / r)
    m = ctx.mpc(zb.mid)
    u = ctx.ldexp(1, 3 - prec)
    a, qd = x.numerator, x.denominator
    # c_n = prod_{i<=n} i (i+x) / prod_{j<2n} (x+2+j), each factor rounded once
    c = ctx.mpf(1)
    for i in range(1, n + 1):
        c = c * (i * (qd * i + a) * qd) / (qd * i + qd + a) / (qd * (n + i) + qd + a)
    w = 1 / m
    t = c * w ** (n + 1)
    k = 4 * n + 2 * (n + 1) + 4
    total = t
    abs_sum = up(abs(t.real) + abs(t.imag))
    # derivative bookkeeping for the input radius
    grow = up(up(abs(m)) * inv_r)
    gpow = up(grow ** (n + 1)) if zb.rad else 0
    dsum = up(up((n + 1) * abs_sum) * gpow * inv_r) if zb.rad else 0
    goal = (1 + r) / (2 * r)
    l = n
    count = 1
    while True:
        num = (l + 1) * (qd * (l + 1) + a)
        den = (l + 1 - n) * (qd * (n + l + 2) + a)
        t = t * w * (ctx.mpf(num) / den)
        k += 6
        l += 1
        count += 1
        total = total + t
        tabs = up(abs(t.real) + abs(t.imag))
        abs_sum = up(abs_sum + tabs)
        if zb.rad:
            gpow = up(gpow * grow)
            dsum = up(dsum + up(up((l + 1) * tabs) * gpow * inv_r))
        q = up(_upq(_ratio_bound(n, x, l)) * inv_r)
        if q > goal:
            continue
        tail = up(up(tabs * up(1 + up(k * u)) * q) / down(1 - q))
        round_err = up(up(1.02 * u) * up((k + count) * abs_sum))
        err = up(tail + round_err)
        if zb.rad:
            q2 = up(q * Fraction(l + 2, l + 1))
            dtail = up(up(up((l + 1) * tabs) * gpow * inv_r) * q2 / down(1 - q2)) if q2 < 1 else ctx.inf
            err = up(err + up(zb.rad * up(dsum + dtail)))
        size = down(abs(total))
        if size > 0 and err <= rel_target * size:
            if k * u > 0.001:
                raise PrecisionExhausted("rounding bound out of its validity range", index=n, prec=prec)
            return ComplexBall(total, err, prec)
        if tabs < err * u:
            # the tail is negligible already; only precision can shrink err
            return ComplexBall(total, err, prec)


def eval_R(
    n: int, x, z, err_target=None, prec: int = 128, cap: int = 16384, method: str = "fast"
) -> ComplexBall:
    """Ball containing R_n(z), summed from its own series (no cancellation
    against Q_n f).  ``err_target`` is relative: the returned ball satisfies
    rad <= err_target * |R_n(z)| unless the input ball is too wide, in which
    case precision escalation gives up with PrecisionExhausted.
    """
    x = as_rational(x)
    _check_shift(x)
    exact_input = not isinstance(z, ComplexBall)
    rel_target = err_target if err_target is not None else 2.0 ** -50
    p = max(prec, 64)
    while True:
        zb = _as_ball(z, p) if exact_input else z.with_prec(max(p, z.prec))
        summer = _sum_remainder_fast if method == "fast" else _sum_remainder
        out = summer(n, x, zb, rel_target)
        if out.rel_rad() <= rel_target:
            return out
        if p >= cap or (not exact_input and p >= z.prec + 64):
            raise PrecisionExhausted(
                f"R_{n} not resolved to relative accuracy {rel_target}", index=n, prec=p
            )
        p = min(2 * p, cap)
