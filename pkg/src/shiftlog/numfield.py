"""Algebraic numbers: certified conjugates, denominators, field arithmetic in
Q[Y]/(m(Y)), characteristic/minimal polynomials, Weil heights and exact
Sturm root counting.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import mpmath

from .balls import ComplexBall, RealBall, context, down, mpf_to_fraction, up
from .exact import Poly, as_rational

PRECISION_CAP = 16384


class CertificationError(RuntimeError):
    """Root certification failed below the precision cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(f"{message} (precision cap {cap} bits)")
        self.cap = cap


class SelectionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Sturm sequences


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    return chain


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations(chain: list[Poly], t: Fraction | None, at_minus_inf: bool = False) -> int:
    if t is None:
        vals = [
            c.lc * (-1 if at_minus_inf and c.degree % 2 else 1) for c in chain if not c.is_zero()
        ]
    else:
        vals = [c(t) for c in chain]
    return _sign_changes(vals)


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Exact number of distinct real roots of squarefree p in [lo, hi].

    ``None`` stands for an infinite endpoint.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    lo = None if lo is None else as_rational(lo)
    hi = None if hi is None else as_rational(hi)
    if lo is not None and hi is not None and lo > hi:
        return 0
    extra = 0
    # deflate exact endpoint roots so Sturm's theorem applies to (lo, hi)
    for t in (lo, hi):
        if t is not None and p(t) == 0:
            if lo == hi:
                return 1
            p = p // Poly((-t, 1))
            extra += 1
    if p.degree <= 0:
        return extra
    chain = sturm_chain(p)
    v_lo = _variations(chain, lo, at_minus_inf=True)
    v_hi = _variations(chain, hi)
    return v_lo - v_hi + extra


def count_roots_in_unit_interval(min_poly: Poly) -> int:
    if not min_poly.is_squarefree():
        raise ValueError("polynomial is not squarefree")
    return count_real_roots(min_poly, 0, 1)


# ---------------------------------------------------------------------------
# denominators


def den_algebraic(min_poly: Poly) -> int:
    """Least m >= 1 with m*beta an algebraic integer, beta a root of min_poly."""
    a = min_poly.primitive().int_coeffs()
    d = len(a) - 1
    ad = abs(a[d])
    for m in sorted(_divisors(ad)):
        if all((a[d - i] * m**i) % ad == 0 for i in range(1, d + 1)):
            assert ad % m == 0
            return m
    raise AssertionError("unreachable: m = |a_d| always works")


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return out


# ---------------------------------------------------------------------------
# root finding and certification


def _horner_pair(a, z):
    p = a[-1]
    dp = 0
    for c in reversed(a[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _initial_points(p: Poly, ctx) -> list:
    d = p.degree
    c = -p[d - 1] / (d * p.lc)
    q = p.compose(Poly((c, 1)))
    ratios = []
    for i in range(1, d + 1):
        t = abs(q[d - i] / q.lc)
        if i == d:
            t /= 2
        if t:
            ratios.append(mpmath.mpf(t.numerator) / t.denominator)
    radius = 2 * max((r ** (mpmath.mpf(1) / i) for i, r in enumerate(ratios, 1)), default=1)
    radius = radius if radius > 0 else 1
    cc = ctx.mpf(c.numerator) / c.denominator
    return [
        cc + ctx.mpf(radius) * ctx.expjpi(ctx.mpf(2 * k) / d + ctx.mpf("0.13"))
        for k in range(d)
    ]


def _aberth(p: Poly, prec: int, start: list | None, maxiter: int) -> list:
    ctx = context(prec)
    a = [ctx.mpf(c.numerator) / c.denominator for c in p.coeffs]
    d = p.degree
    zs = [ctx.mpc(z) for z in start] if start else _initial_points(p, ctx)
    tol = ctx.ldexp(1, 8 - prec)
    for _ in range(maxiter):
        worst = ctx.mpf(0)
        for i in range(d):
            pv, dpv = _horner_pair(a, zs[i])
            if pv == 0:
                continue
            if dpv == 0:
                zs[i] += ctx.ldexp(1, -prec // 2) * (1 + abs(zs[i]))
                worst = ctx.mpf(1)
                continue
            ratio = pv / dpv
            s = ctx.fsum(1 / (zs[i] - zs[j]) for j in range(d) if j != i and zs[i] != zs[j])
            w = ratio / (1 - ratio * s)
            zs[i] -= w
            worst = max(worst, abs(w) / max(abs(zs[i]), ctx.mpf(1)))
        if worst < tol:
            break
    return zs


def _real_root_count(p: Poly) -> int:
    return count_real_roots(p)


def _certify(p: Poly, mids: list, prec: int) -> list[ComplexBall] | None:
    """Newton-residual inclusion disks; None if they fail to be disjoint."""
    d = p.degree
    dp = p.derivative()
    eval_prec = prec + 32
    balls = []
    for m in mids:
        if m.imag == 0:
            t = mpf_to_fraction(m.real)
            if p(t) == 0:
                balls.append(ComplexBall(m, 0, prec))
                continue
        z = ComplexBall(m, 0, eval_prec)
        pv = ComplexBall.coerce(p(z), eval_prec)
        dpv = ComplexBall.coerce(dp(z), eval_prec)
        lower = dpv.abs_lower()
        if lower <= 0:
            return None
        r = up(d * pv.abs_upper() / down(lower))
        balls.append(ComplexBall(m, r, prec))
    for i in range(d):
        for j in range(i + 1, d):
            if not balls[i].disjoint(balls[j]):
                return None
    return balls


def _canonical_cmp(a: ComplexBall, b: ComplexBall) -> int:
    ar, br = a.mid.real, b.mid.real
    if abs(ar - br) > a.rad + b.rad:
        return -1 if ar < br else 1
    ai, bi = a.mid.imag, b.mid.imag
    return -1 if ai < bi else (1 if ai > bi else 0)


def find_conjugates(
    min_poly: Poly, target_radius=None, prec: int = 128, cap: int = PRECISION_CAP
) -> list[ComplexBall]:
    """All roots of a squarefree integer polynomial as certified disjoint balls.

    The balls come back in canonical order (real part, then imaginary part).
    Real roots are certified real: their balls are centred on the real axis,
    so the unique root inside each is its own complex conjugate.
    """
    p = min_poly
    if p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if not p.is_squarefree():
        raise ValueError("polynomial is not squarefree")
    n_real = _real_root_count(p)
    mids = None
    prec = max(prec, 64)
    while True:
        ctx = context(prec)
        if mids is None:
            mids = _aberth(p, 64, None, 500)
        mids = _aberth(p, prec, mids, 60)
        # the n_real smallest imaginary parts belong to real roots
        order = sorted(range(len(mids)), key=lambda i: abs(mids[i].imag))
        snapped = list(mids)
        for i in order[:n_real]:
            snapped[i] = ctx.mpc(snapped[i].real, 0)
        balls = _certify(p, snapped, prec)
        if balls is not None:
            if target_radius is None:
                scale = max([1] + [abs(b.mid) for b in balls])
                goal = up(ctx.ldexp(scale, 24 - prec))
                done = all(b.rad <= goal for b in balls)
            else:
                goal = as_rational(target_radius)
                done = all(mpf_to_fraction(b.rad) <= goal for b in balls)
            if done:
                return sorted(balls, key=functools.cmp_to_key(_canonical_cmp))
        if prec >= cap:
            raise CertificationError("could not certify the conjugates", cap)
        prec = min(2 * prec, cap)


# ---------------------------------------------------------------------------
# algebraic numbers


@dataclass(frozen=True)
class RootIndex:
    index: int

    def describe(self) -> str:
        return f"index:{self.index}"


@dataclass(frozen=True)
class RootNear:
    target: complex

    def describe(self) -> str:
        z = self.target
        return f"near:{z.real!r}{z.imag:+}i"


RootSelector = Union[RootIndex, RootNear]


def select_root(balls: Sequence[ComplexBall], selector) -> int:
    """Index of the root picked by ``selector``; ambiguity is an error."""
    d = len(balls)
    if isinstance(selector, RootIndex):
        if not 0 <= selector.index < d:
            raise SelectionError(f"root index {selector.index} out of range for degree {d}")
        return selector.index
    if isinstance(selector, RootNear):
        ctx = context(max(b.prec for b in balls))
        t = ctx.mpc(selector.target.real, selector.target.imag)
        hits = []
        for k, b in enumerate(balls):
            # neighbourhood: half the distance to the nearest other root
            sep = min((abs(b.mid - o.mid) for j, o in enumerate(balls) if j != k), default=ctx.inf)
            if abs(t - b.mid) < sep / 2:
                hits.append(k)
        if len(hits) != 1:
            raise SelectionError(f"target {selector.target} does not single out one root")
        return hits[0]
    if isinstance(selector, ComplexBall):
        hits = [k for k, b in enumerate(balls) if b.overlaps(selector)]
        if len(hits) != 1:
            raise SelectionError("enclosure overlaps %d conjugate balls" % len(hits))
        return hits[0]
    raise TypeError(f"unknown root selector {selector!r}")


@dataclass(frozen=True)
class AlgebraicNumber:
    min_poly: Poly
    conjugates: tuple[ComplexBall, ...]
    index: int
    selector: object
    prec: int

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    @property
    def selected(self) -> ComplexBall:
        return self.conjugates[self.index]

    def is_real(self) -> bool:
        """Certified: the selected ball is centred on R (see find_conjugates)."""
        return self.selected.mid.imag == 0

    def refine(self, prec: int, cap: int = PRECISION_CAP) -> "AlgebraicNumber":
        balls = find_conjugates(self.min_poly, prec=prec, cap=cap)
        idx = select_root(balls, self.selected)
        return AlgebraicNumber(self.min_poly, tuple(balls), idx, self.selector, prec)


def algebraic_number(poly, selector, prec: int = 128, cap: int = PRECISION_CAP) -> AlgebraicNumber:
    p = poly if isinstance(poly, Poly) else Poly(poly)
    p = p.primitive()
    while True:
        balls = find_conjugates(p, prec=prec, cap=cap)
        try:
            idx = select_root(balls, selector)
            break
        except SelectionError:
            if not isinstance(selector, ComplexBall) or prec >= cap:
                raise
            prec = min(2 * prec, cap)
    return AlgebraicNumber(p, tuple(balls), idx, selector, prec)


# ---------------------------------------------------------------------------
# field elements in Q[Y]/(m(Y))


def _lift(field_poly: Poly, v) -> "FieldElement":
    if isinstance(v, FieldElement):
        if v.field != field_poly:
            raise ValueError("elements of different fields")
        return v
    return FieldElement(field_poly, Poly((as_rational(v),)))


@dataclass(frozen=True)
class FieldElement:
    field: Poly
    rep: Poly

    def __post_init__(self):
        f = self.field if isinstance(self.field, Poly) else Poly(self.field)
        f = f.primitive()
        object.__setattr__(self, "field", f)
        rep = self.rep if isinstance(self.rep, Poly) else Poly(self.rep)
        object.__setattr__(self, "rep", rep % f)

    @classmethod
    def generator(cls, field_poly) -> "FieldElement":
        return cls(field_poly, Poly.X())

    @property
    def degree(self) -> int:
        return self.field.degree

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def is_rational(self) -> bool:
        return self.rep.degree <= 0

    def __add__(self, other):
        o = _lift(self.field, other)
        return FieldElement(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.rep)

    def __sub__(self, other):
        return self + (-_lift(self.field, other))

    def __rsub__(self, other):
        return _lift(self.field, other) - self

    def __mul__(self, other):
        o = _lift(self.field, other)
        return FieldElement(self.field, self.rep * o.rep)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * field_inverse(_lift(self.field, other))

    def __rtruediv__(self, other):
        return _lift(self.field, other) * field_inverse(self)

    def __pow__(self, k: int):
        if k < 0:
            return field_inverse(self) ** (-k)
        out = _lift(self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == Poly((other,))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.rep))

    def evaluate(self, generator_ball: ComplexBall) -> ComplexBall:
        return ComplexBall.coerce(self.rep(generator_ball), generator_ball.prec)

    def __repr__(self) -> str:
        return f"FieldElement({self.rep.to_str('Y')} mod {self.field.to_str('Y')})"


def field_inverse(e: FieldElement) -> FieldElement:
    """Extended Euclid in Q[Y]; the product is checked to reduce to 1."""
    if e.is_zero():
        raise ZeroDivisionError("inverse of zero field element")
    r0, r1 = e.field, e.rep
    s0, s1 = Poly(), Poly((1,))
    while r1.degree > 0:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r1.is_zero():
        raise ZeroDivisionError("element is a zero divisor: defining polynomial is reducible")
    inv = FieldElement(e.field, s1 / r1.lc)
    if (inv * e).rep != Poly((1,)):
        raise AssertionError("field inverse verification failed")
    return inv


def _mult_matrix(e: FieldElement) -> list[list[Fraction]]:
    d = e.degree
    cols = []
    basis = Poly((1,))
    for _ in range(d):
        v = (e.rep * basis) % e.field
        cols.append([v[i] for i in range(d)])
        basis = (basis * Poly.X()) % e.field
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def element_charpoly(e: FieldElement) -> Poly:
    """Monic prod_k (X - g(sigma_k(gamma))), via Faddeev-LeVerrier on the
    multiplication-by-g matrix (equal to Res_Y(m(Y), X - g(Y)) up to a constant)."""
    d = e.degree
    A = _mult_matrix(e)
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[d] = Fraction(1)
    M = [[Fraction(0)] * d for _ in range(d)]
    for k in range(1, d + 1):
        # M_k = A M_{k-1} + c_{d-k+1} I
        AM = [[sum(A[i][t] * M[t][j] for t in range(d)) for j in range(d)] for i in range(d)]
        c_prev = coeffs[d - k + 1]
        M = [[AM[i][j] + (c_prev if i == j else 0) for j in range(d)] for i in range(d)]
        AM = [[sum(A[i][t] * M[t][j] for t in range(d)) for j in range(d)] for i in range(d)]
        coeffs[d - k] = -sum(AM[i][i] for i in range(d)) / k
    return Poly(coeffs)


def element_minpoly(e: FieldElement) -> tuple[Poly, int]:
    """(primitive integer minimal polynomial, k) with charpoly = minpoly^k."""
    cp = element_charpoly(e)
    sf = cp.squarefree_part()
    k, r = divmod(cp.degree, sf.degree)
    if r or (sf**k).monic() != cp.monic():
        raise AssertionError("characteristic polynomial is not a power of the minimal polynomial")
    return sf.primitive(), k


def _rep_bits(rep: Poly) -> int:
    return max(
        [max(c.numerator.bit_length(), c.denominator.bit_length()) for c in rep.coeffs] or [1]
    )


def rational_height(q) -> RealBall:
    q = as_rational(q)
    m = max(abs(q.numerator), q.denominator)
    prec = max(128, m.bit_length() + 64)
    return RealBall.from_rational(m, prec).log()


def weil_height(e: FieldElement, prec: int = 128, cap: int = PRECISION_CAP) -> RealBall:
    """Ball containing h(alpha) via the Mahler measure of its minimal polynomial:
    (1/d)(log lc + sum_k log+ |g(sigma_k gamma)|) with lc from the primitive
    integer form of the characteristic polynomial."""
    if e.is_rational():
        return rational_height(e.rep[0])
    d = e.degree
    prec = max(prec, 2 * _rep_bits(e.rep) + 64)
    cp = element_charpoly(e)
    lc = cp.primitive().lc
    total = RealBall.from_rational(lc.numerator, prec).log()
    for b in find_conjugates(e.field, prec=prec, cap=cap):
        total = total + e.evaluate(b).abs().log_plus()
    return total / d

