"""Mid-radius ball arithmetic on top of mpmath.

Every operation returns a ball that contains the exact result whenever the
exact operands lie in the operand balls.  Midpoints are computed at the
ball's working precision; rounding of the midpoint is charged to the radius
with a few-ulp bound.  Radii are kept at 30 bits and rounded outward by an
explicit inflation factor.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Number

import mpmath

MIN_PREC = 32
DEFAULT_PREC = 128

_RAD = mpmath.MPContext()
_RAD.prec = 30
_UP = _RAD.mpf(1) + _RAD.ldexp(1, -20)
_DOWN = _RAD.mpf(1) - _RAD.ldexp(1, -20)
_ZERO = _RAD.mpf(0)


@lru_cache(maxsize=None)
def context(prec: int) -> mpmath.MPContext:
    """Private mpmath context fixed at ``prec`` bits."""
    if prec < MIN_PREC:
        raise ValueError(f"precision must be at least {MIN_PREC} bits")
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


def up(v) -> mpmath.mpf:
    """Upper bound for the non-negative value v, in the radius context."""
    return _RAD.mpf(v) * _UP


def down(v) -> mpmath.mpf:
    """Lower bound for the non-negative value v, in the radius context."""
    return _RAD.mpf(v) * _DOWN


def _ulp(prec: int, k: int = 0) -> mpmath.mpf:
    return _RAD.ldexp(1, k - prec)


def _frac_to_mpf(ctx, q: Fraction):
    """(mpf, exact?) for a Fraction at the context precision."""
    num, den = q.numerator, q.denominator
    if den & (den - 1) == 0 and abs(num).bit_length() <= ctx.prec:
        return ctx.ldexp(ctx.mpf(num), -(den.bit_length() - 1)), True
    return ctx.mpf(num) / ctx.mpf(den), False


def mpf_to_fraction(v) -> Fraction:
    sign, man, exp, _ = v._mpf_
    if not man:
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** exp)
    return -val if sign else val


class RealBall:
    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad=_ZERO, prec: int = DEFAULT_PREC):
        # trusted constructor: ``mid`` must already be representable at ``prec``
        self.mid = context(prec).mpf(mid)
        self.rad = _RAD.mpf(rad)
        self.prec = prec

    @classmethod
    def from_rational(cls, q, prec: int = DEFAULT_PREC) -> "RealBall":
        ctx = context(prec)
        q = q if isinstance(q, Fraction) else Fraction(q)
        m, exact = _frac_to_mpf(ctx, q)
        return cls(m, _ZERO if exact else up(abs(m)) * _ulp(prec, 1), prec)

    @classmethod
    def coerce(cls, v, prec: int) -> "RealBall":
        if isinstance(v, RealBall):
            return v
        if isinstance(v, (int, Fraction)):
            return cls.from_rational(v, prec)
        if isinstance(v, float):
            return cls.from_rational(Fraction(v), prec)
        raise TypeError(f"cannot coerce {type(v).__name__} to RealBall")

    def _pair(self, other):
        other = RealBall.coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        ctx = context(prec)
        return ctx, prec, ctx.mpf(self.mid), ctx.mpf(other.mid), other

    # -- bounds
    def lo(self):
        return context(self.prec).fsub(self.mid, self.rad, exact=True)

    def hi(self):
        return context(self.prec).fadd(self.mid, self.rad, exact=True)

    def contains(self, v) -> bool:
        ctx = context(self.prec + 64)
        return abs(ctx.mpf(v) - ctx.mpf(self.mid)) <= self.rad

    def contains_ball(self, other: "RealBall") -> bool:
        return self.lo() <= other.lo() and other.hi() <= self.hi()

    def overlaps(self, other: "RealBall") -> bool:
        return not (self.hi() < other.lo() or other.hi() < self.lo())

    def gt(self, v) -> bool:
        """Certainly greater than v."""
        if isinstance(v, Fraction):
            return mpf_to_fraction(self.lo()) > v
        return self.lo() > v

    def lt(self, v) -> bool:
        if isinstance(v, Fraction):
            return mpf_to_fraction(self.hi()) < v
        return self.hi() < v

    def contains_zero(self) -> bool:
        return self.lo() <= 0 <= self.hi()

    def width(self):
        return 2 * self.rad

    def rel_rad(self):
        m = abs(self.mid)
        return _RAD.inf if m == 0 else self.rad / down(m)

    # -- arithmetic
    def __neg__(self) -> "RealBall":
        return RealBall(-self.mid, self.rad, self.prec)

    def __add__(self, other) -> "RealBall":
        ctx, prec, a, b, o = self._pair(other)
        m = a + b
        return RealBall(m, up(self.rad + o.rad + up(abs(m)) * _ulp(prec, 1)), prec)

    __radd__ = __add__

    def __sub__(self, other) -> "RealBall":
        return self + (-RealBall.coerce(other, self.prec))

    def __rsub__(self, other) -> "RealBall":
        return RealBall.coerce(other, self.prec) - self

    def __mul__(self, other) -> "RealBall":
        ctx, prec, a, b, o = self._pair(other)
        m = a * b
        ma, mb = up(abs(a)), up(abs(b))
        r = ma * o.rad + mb * self.rad + self.rad * o.rad + up(abs(m)) * _ulp(prec, 1)
        return RealBall(m, up(r), prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RealBall":
        ctx, prec, a, b, o = self._pair(other)
        mb_lo = down(abs(b))
        if mb_lo <= o.rad:
            raise ZeroDivisionError("division by a ball containing zero")
        m = a / b
        r = (self.rad * up(abs(b)) + up(abs(a)) * o.rad) / (down(mb_lo - o.rad) * mb_lo)
        return RealBall(m, up(r + up(abs(m)) * _ulp(prec, 1)), prec)

    def __rtruediv__(self, other) -> "RealBall":
        return RealBall.coerce(other, self.prec) / self

    def log(self) -> "RealBall":
        ctx = context(self.prec)
        m = self.mid
        lo = down(down(m) - self.rad) if m > 0 else _ZERO
        if lo <= 0:
            raise ValueError("log of a ball not bounded away from zero")
        v = ctx.log(m)
        r = self.rad / down(lo) + up(abs(v)) * _ulp(self.prec, 2) + _ulp(self.prec, 0)
        return RealBall(v, up(r), self.prec)

    def exp(self) -> "RealBall":
        ctx = context(self.prec)
        v = ctx.exp(self.mid)
        if self.rad > 1:
            raise ValueError("exp of a ball with radius > 1")
        # e^m (e^r - 1) <= e^m (r + r^2)
        r = up(v) * (self.rad + self.rad * self.rad) + up(v) * _ulp(self.prec, 2)
        return RealBall(v, up(r), self.prec)

    def sqrt(self) -> "RealBall":
        ctx = context(self.prec)
        lo = self.lo()
        if lo < 0:
            raise ValueError("sqrt of a ball reaching negative values")
        v = ctx.sqrt(self.mid)
        if v == 0:
            return RealBall(0, up(_RAD.sqrt(self.rad)), self.prec)
        r = self.rad / down(v) + up(v) * _ulp(self.prec, 1)
        return RealBall(v, up(r), self.prec)

    def log_plus(self) -> "RealBall":
        """Ball for log max(1, t) over t in the ball (t >= 0 assumed)."""
        if self.hi() <= 1:
            return RealBall(0, _ZERO, self.prec)
        if self.lo() > 1:
            return self.log()
        # enclose [0, log hi] by a ball of radius log(hi)/2
        h = up(_RAD.log(up(self.hi())))
        ctx = context(self.prec)
        return RealBall(ctx.mpf(h) / 2, up(h / 2), self.prec)

    def __float__(self) -> float:
        return float(self.mid)

    def to_str(self, digits: int = 15) -> str:
        return f"[{mpmath.nstr(self.mid, digits)} +/- {mpmath.nstr(self.rad, 3)}]"

    def __repr__(self) -> str:
        return f"RealBall{self.to_str()}"


class ComplexBall:
    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad=_ZERO, prec: int = DEFAULT_PREC):
        # trusted constructor: ``mid`` must already be representable at ``prec``
        self.mid = context(prec).mpc(mid)
        self.rad = _RAD.mpf(rad)
        self.prec = prec

    @classmethod
    def from_rational(cls, q, prec: int = DEFAULT_PREC, imag=0) -> "ComplexBall":
        ctx = context(prec)
        q = q if isinstance(q, Fraction) else Fraction(q)
        im = imag if isinstance(imag, Fraction) else Fraction(imag)
        a, ea = _frac_to_mpf(ctx, q)
        b, eb = _frac_to_mpf(ctx, im)
        r = _ZERO if (ea and eb) else (up(abs(a)) + up(abs(b))) * _ulp(prec, 1)
        return cls(ctx.mpc(a, b), r, prec)

    @classmethod
    def from_number(cls, v, prec: int = DEFAULT_PREC) -> "ComplexBall":
        """Ball around an arbitrary mpmath/Python number (rounded to prec)."""
        if isinstance(v, (int, Fraction)):
            return cls.from_rational(v, prec)
        if isinstance(v, (float, complex)):
            z = complex(v)
            return cls.from_rational(Fraction(z.real), prec, Fraction(z.imag))
        ctx = context(prec)
        m = ctx.mpc(v)
        return cls(m, (up(abs(m.real)) + up(abs(m.imag))) * _ulp(prec, 1), prec)

    @classmethod
    def coerce(cls, v, prec: int) -> "ComplexBall":
        if isinstance(v, ComplexBall):
            return v
        if isinstance(v, RealBall):
            return cls(v.mid, v.rad, v.prec)
        if isinstance(v, (int, Fraction)):
            return cls.from_rational(v, prec)
        if isinstance(v, (float, complex)):
            return cls.from_number(v, prec)
        if isinstance(v, Number) or hasattr(v, "_mpc_") or hasattr(v, "_mpf_"):
            return cls.from_number(v, prec)
        raise TypeError(f"cannot coerce {type(v).__name__} to ComplexBall")

    def _pair(self, other):
        other = ComplexBall.coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        ctx = context(prec)
        a = self.mid if self.prec == prec else ctx.mpc(self.mid)
        b = other.mid if other.prec == prec else ctx.mpc(other.mid)
        return ctx, prec, a, b, other

    def with_prec(self, prec: int) -> "ComplexBall":
        """Same ball carried at a different working precision."""
        if prec >= self.prec:
            return ComplexBall(self.mid, self.rad, prec)
        return ComplexBall.from_number(self.mid, prec) + ComplexBall(0, self.rad, prec)

    # -- queries
    def abs(self) -> RealBall:
        v = abs(self.mid)
        return RealBall(v, up(self.rad + up(v) * _ulp(self.prec, 2)), self.prec)

    def abs_lower(self):
        v = down(abs(self.mid)) - up(self.rad)
        return down(v) if v > 0 else _ZERO

    def abs_upper(self):
        return up(up(abs(self.mid)) + self.rad)

    def real(self) -> RealBall:
        return RealBall(self.mid.real, self.rad, self.prec)

    def imag(self) -> RealBall:
        return RealBall(self.mid.imag, self.rad, self.prec)

    def log_abs(self) -> RealBall:
        return self.abs().log()

    def contains(self, v) -> bool:
        ctx = context(self.prec + 64)
        return abs(ctx.mpc(v) - ctx.mpc(self.mid)) <= self.rad

    def contains_ball(self, other: "ComplexBall") -> bool:
        ctx = context(max(self.prec, other.prec) + 64)
        return abs(ctx.mpc(other.mid) - ctx.mpc(self.mid)) + other.rad <= self.rad

    def overlaps(self, other: "ComplexBall") -> bool:
        ctx = context(max(self.prec, other.prec) + 64)
        return abs(ctx.mpc(other.mid) - ctx.mpc(self.mid)) <= self.rad + other.rad

    def disjoint(self, other: "ComplexBall") -> bool:
        """Certainly disjoint."""
        ctx = context(max(self.prec, other.prec) + 64)
        dist = down(abs(ctx.mpc(other.mid) - ctx.mpc(self.mid)))
        return dist > up(self.rad + other.rad)

    def contains_zero(self) -> bool:
        return self.abs_lower() <= 0

    def rel_rad(self):
        m = abs(self.mid)
        return _RAD.inf if m == 0 else self.rad / down(m)

    def is_exact(self) -> bool:
        return self.rad == 0

    # -- arithmetic
    def __neg__(self) -> "ComplexBall":
        return ComplexBall(-self.mid, self.rad, self.prec)

    def conjugate(self) -> "ComplexBall":
        return ComplexBall(context(self.prec).conj(self.mid), self.rad, self.prec)

    def __add__(self, other) -> "ComplexBall":
        try:
            ctx, prec, a, b, o = self._pair(other)
        except TypeError:
            return NotImplemented
        m = a + b
        err = (up(abs(m.real)) + up(abs(m.imag))) * _ulp(prec, 1)
        return ComplexBall(m, up(self.rad + o.rad + err), prec)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexBall":
        try:
            return self + (-ComplexBall.coerce(other, self.prec))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "ComplexBall":
        return ComplexBall.coerce(other, self.prec) - self

    def __mul__(self, other) -> "ComplexBall":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._mul_rational(Fraction(other))
        try:
            ctx, prec, a, b, o = self._pair(other)
        except TypeError:
            return NotImplemented
        m = a * b
        ma, mb = up(abs(a)), up(abs(b))
        r = ma * o.rad + mb * self.rad + self.rad * o.rad + ma * mb * _ulp(prec, 2)
        return ComplexBall(m, up(r), prec)

    __rmul__ = __mul__

    def _mul_rational(self, q: Fraction) -> "ComplexBall":
        ctx = context(self.prec)
        num, den = q.numerator, q.denominator
        if den == 1 and abs(num).bit_length() <= self.prec:
            m = self.mid * num
            err = up(abs(m)) * _ulp(self.prec, 2)
            return ComplexBall(m, up(self.rad * abs(num) + err), self.prec)
        qq = ctx.mpf(num) / ctx.mpf(den)
        m = self.mid * qq
        aq = up(abs(qq))
        # |q - qq| <= 2^(1-p)|qq| from the two roundings building qq
        r = self.rad * aq * _UP + up(abs(self.mid)) * aq * _ulp(self.prec, 3)
        return ComplexBall(m, up(r), self.prec)

    def __truediv__(self, other) -> "ComplexBall":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._mul_rational(1 / Fraction(other))
        try:
            ctx, prec, a, b, o = self._pair(other)
        except TypeError:
            return NotImplemented
        mb_lo = down(abs(b))
        if mb_lo <= o.rad:
            raise ZeroDivisionError("division by a ball containing zero")
        m = a / b
        mb_up = up(abs(b))
        r = (self.rad * mb_up + up(abs(a)) * o.rad) / (down(mb_lo - o.rad) * mb_lo)
        r += up(abs(a)) / mb_lo * _ulp(prec, 3)
        return ComplexBall(m, up(r), prec)

    def __rtruediv__(self, other) -> "ComplexBall":
        return ComplexBall.coerce(other, self.prec) / self

    def __pow__(self, k: int) -> "ComplexBall":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = ComplexBall(1, _ZERO, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sqrt(self) -> "ComplexBall":
        """Ball containing s*sqrt(w) for every w in self, for some sign s = s(w).

        Exact containment of the principal branch is lost only when the ball
        straddles the negative real axis; callers that use both signs (the
        quadratic formula) are unaffected.
        """
        ctx = context(self.prec)
        am = abs(self.mid)
        if down(am) <= self.rad:
            return ComplexBall(0, up(_RAD.sqrt(up(am) + self.rad)), self.prec)
        v = ctx.sqrt(self.mid)
        # |sqrt(w) - s sqrt(m)| = |w - m| / |sqrt(w) + s sqrt(m)|, denominator^2 >= 2|m| - r
        denom = _RAD.sqrt(down(down(am) * 2 - up(self.rad)))
        r = self.rad / down(denom) + up(abs(v)) * _ulp(self.prec, 4)
        return ComplexBall(v, up(r), self.prec)

    def __complex__(self) -> complex:
        return complex(self.mid)

    def to_str(self, digits: int = 15) -> str:
        return f"[{mpmath.nstr(self.mid, digits)} +/- {mpmath.nstr(self.rad, 3)}]"

    def __repr__(self) -> str:
        return f"ComplexBall{self.to_str()}"
