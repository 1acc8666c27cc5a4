"""Characteristic roots of X^2 - 2(2z-1)X + 1, ball iteration of the Padé
recurrence, empirical growth rates and the per-conjugate comparison report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .balls import ComplexBall, RealBall, context
from .exact import as_rational
from .numfield import AlgebraicNumber, count_roots_in_unit_interval
from .pade import PrecisionExhausted, eval_R, recurrence_coeffs, step_recurrence

MAX_REL_RADIUS = 2.0**-10


class HypothesisFailure(ValueError):
    """An input violates a standing assumption (named in ``reason``)."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class CharRoots:
    z: ComplexBall
    lambda1: ComplexBall
    lambda2: ComplexBall
    rho1: RealBall
    rho2: RealBall
    distinct: bool


def char_roots(z) -> CharRoots:
    """Both roots of X^2 - 2(2z-1)X + 1, ordered by modulus.

    The branch of sqrt(z^2 - z) is irrelevant: b +/- 2s covers both roots.
    ``distinct`` is False when the modulus intervals overlap at this precision.
    """
    zb = ComplexBall.coerce(z, getattr(z, "prec", 128))
    b = 2 * zb - 1
    s = (zb * zb - zb).sqrt()
    la, lb = b + 2 * s, b - 2 * s
    ra, rb = la.abs(), lb.abs()
    if ra.mid > rb.mid:
        la, lb, ra, rb = lb, la, rb, ra
    return CharRoots(zb, la, lb, ra, rb, not ra.overlaps(rb))


def run_recurrence(
    x, z, seeds, n_max: int, precision_bits: int = 256, keep: bool = False
) -> list[tuple[int, float]]:
    """Iterate the recurrence in ball arithmetic and record (n, log|X_n|).

    Raises PrecisionExhausted at the first n whose ball has relative radius
    above 2^-10.  With ``keep`` the balls are returned as a third component.
    """
    x = as_rational(x)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    zb = ComplexBall.coerce(z, precision_bits).with_prec(precision_bits)
    prev = ComplexBall.coerce(seeds[0], precision_bits)
    curr = ComplexBall.coerce(seeds[1], precision_bits)
    out = []

    def record(n, v):
        if v.is_exact() and v.mid == 0:
            lm = -math.inf
        else:
            if v.contains_zero() or v.rel_rad() > MAX_REL_RADIUS:
                raise PrecisionExhausted(
                    f"relative radius above 2^-10 at n={n} with {precision_bits} bits",
                    index=n,
                    prec=precision_bits,
                )
            lm = float(context(precision_bits).log(abs(v.mid)))
        out.append((n, lm, v) if keep else (n, lm))

    record(0, prev)
    record(1, curr)
    for n in range(1, n_max):
        prev, curr = curr, step_recurrence(prev, curr, recurrence_coeffs(n, x), zb)
        record(n + 1, curr)
    return out


@dataclass(frozen=True)
class RateEstimate:
    value: float
    window: tuple[int, int]
    residual: float


def growth_rate(samples: Sequence[tuple], min_samples: int = 16) -> RateEstimate:
    """Mean of per-unit-n log-ratio steps over the trailing half of the samples."""
    pts = sorted((s[0], s[1]) for s in samples)
    if len(pts) < min_samples:
        raise ValueError(f"need at least {min_samples} samples, got {len(pts)}")
    tail = pts[len(pts) // 2 :]
    steps = [(b[1] - a[1]) / (b[0] - a[0]) for a, b in zip(tail, tail[1:])]
    value = sum(steps) / len(steps)
    return RateEstimate(value, (tail[0][0], tail[-1][0]), max(steps) - min(steps))


def default_precision(rho2: float, n_max: int) -> int:
    return 64 + int(n_max * math.log2(max(rho2, 2.0)) * 0.1)


def dominant_samples(x, z_of_prec, which: str, n_max: int, prec: int, cap: int = 16384):
    """run_recurrence for Q or P seeds with doubling on precision exhaustion.

    ``z_of_prec(p)`` returns the evaluation point as a ball good to p bits.
    """
    x = as_rational(x)
    while True:
        z = z_of_prec(prec)
        if which == "Q":
            seeds = (1, (2 + x) * z - (1 + x))
        else:
            seeds = (0, 2 + x)
        try:
            return run_recurrence(x, z, seeds, n_max, prec), prec
        except PrecisionExhausted:
            if prec >= cap:
                raise
            prec = min(2 * prec, cap)


def remainder_samples(x, z_of_prec, j_max: int = 12, prec: int = 128, cap: int = 16384):
    """(n, log|R_n(z)|) at n = 2^j, j = 0..j_max, from the direct series."""
    out = []
    for j in range(j_max + 1):
        n = 2**j
        p = prec
        while True:
            try:
                v = eval_R(n, x, z_of_prec(p), err_target=1e-12, prec=p, cap=cap)
                break
            except PrecisionExhausted:
                if p >= cap:
                    raise
                p = min(2 * p, cap)
        prec = p
        out.append((n, float(context(p).log(abs(v.mid)))))
    return out


@dataclass(frozen=True)
class ConjugateRates:
    index: int
    z: complex
    log_rho2: float
    q_rate: RateEstimate
    p_rate: RateEstimate
    precision_bits: int

    @property
    def q_deviation(self) -> float:
        return abs(self.q_rate.value / self.log_rho2 - 1)

    @property
    def p_deviation(self) -> float:
        return abs(self.p_rate.value / self.log_rho2 - 1)


@dataclass(frozen=True)
class PerronReport:
    x: Fraction
    n_max: int
    conjugates: list[ConjugateRates]
    selected: int
    log_rho1: float
    r_rate: RateEstimate
    r_samples: list = field(default_factory=list)

    @property
    def r_deviation(self) -> float:
        return abs(self.r_rate.value / self.log_rho1 - 1)

    def max_deviation(self) -> float:
        devs = [c.q_deviation for c in self.conjugates] + [c.p_deviation for c in self.conjugates]
        return max(devs + [self.r_deviation])

    def to_dict(self) -> dict:
        return {
            "x": str(self.x),
            "n_max": self.n_max,
            "selected": self.selected,
            "conjugates": [
                {
                    "index": c.index,
                    "z": [c.z.real, c.z.imag],
                    "log_rho2": c.log_rho2,
                    "q_rate": c.q_rate.value,
                    "p_rate": c.p_rate.value,
                    "q_deviation": c.q_deviation,
                    "p_deviation": c.p_deviation,
                    "residual": max(c.q_rate.residual, c.p_rate.residual),
                    "precision_bits": c.precision_bits,
                }
                for c in self.conjugates
            ],
            "log_rho1": self.log_rho1,
            "r_rate": self.r_rate.value,
            "r_deviation": self.r_deviation,
            "r_window": list(self.r_rate.window),
        }


def _conjugate_getter(beta: AlgebraicNumber, k: int, cap: int):
    cache = {beta.prec: beta}

    def get(p: int) -> ComplexBall:
        best = max(cache)
        if best < p:
            cache[p] = cache[best].refine(p, cap=cap)
            best = p
        return cache[best].conjugates[k]

    return get


def perron_report(
    beta: AlgebraicNumber, x, n_max: int = 2000, j_max: int = 12, cap: int = 16384
) -> PerronReport:
    """Empirical Q_n, P_n growth at every conjugate and R_n decay at the selected one,
    next to the characteristic-root predictions."""
    x = as_rational(x)
    if count_roots_in_unit_interval(beta.min_poly):
        raise HypothesisFailure("a conjugate of beta lies in [0, 1]; the characteristic roots coincide there")
    rows = []
    for k, zb in enumerate(beta.conjugates):
        cr = char_roots(zb)
        log_rho2 = float(cr.rho2.log())
        prec = default_precision(float(cr.rho2), n_max)
        get = _conjugate_getter(beta, k, cap)
        qs, pq = dominant_samples(x, get, "Q", n_max, prec, cap)
        ps, pp = dominant_samples(x, get, "P", n_max, pq, cap)
        rows.append(ConjugateRates(k, complex(zb), log_rho2, growth_rate(qs), growth_rate(ps), max(pq, pp)))
    sel = beta.index
    cr = char_roots(beta.selected)
    get = _conjugate_getter(beta, sel, cap)
    rs = remainder_samples(x, get, j_max, prec=max(128, beta.prec), cap=cap)
    return PerronReport(x, n_max, rows, sel, float(cr.rho1.log()), growth_rate(rs, min_samples=4), rs)
