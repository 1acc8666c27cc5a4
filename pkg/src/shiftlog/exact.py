"""Exact rational arithmetic: polynomials, truncated Laurent series in 1/z,
symbolic log-exact constants and the arithmetic functions used to control
the denominators of the Padé approximants.

Rationals are :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"2/7"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


# ---------------------------------------------------------------------------
# factorization


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as sorted ``((p, e), ...)``."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    counts: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    p = 17
    while n > 1 and p * p <= n and p < 10_000:
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return tuple(sorted(counts.items()))


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def euler_phi(m: int) -> int:
    result = m
    for p in prime_divisors(m):
        result = result // p * (p - 1)
    return result


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial over Q, coefficients lowest degree first.

    Instances are immutable; the zero polynomial has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def X(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    # -- basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    # -- ring operations
    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = 1 / Fraction(other)
            return Poly([c * inv for c in self.coeffs])
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        q = [Fraction(0)] * (dq + 1)
        inv_lc = 1 / other.lc
        db = other.degree
        for k in range(dq, -1, -1):
            c = r[k + db] * inv_lc
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    # -- calculus, gcd, normal forms
    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self / self.lc

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive integral."""
        if self.is_zero():
            return Fraction(0)
        num = reduce(math.gcd, (c.numerator for c in self.coeffs))
        den = reduce(math.lcm, (c.denominator for c in self.coeffs))
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer polynomial, content 1, positive leading coefficient."""
        if self.is_zero():
            return self
        p = self / self.content()
        return -p if p.lc < 0 else p

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree <= 0

    def squarefree_part(self) -> "Poly":
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def __call__(self, value):
        """Horner evaluation; ``value`` may be any ring element that mixes with Fraction."""
        if not self.coeffs:
            return Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        return self(other) if self.degree > 0 else Poly(self.coeffs)

    # -- display
    def to_str(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self.to_str('X')})"


IntPolynomial = Poly
RatPolynomial = Poly


def poly_from_ints(coeffs: Sequence[int]) -> Poly:
    return Poly(coeffs)


# ---------------------------------------------------------------------------
# arithmetic functions controlling denominators


def den_rational(x) -> int:
    return as_rational(x).denominator


def _check_shift(x: Fraction) -> None:
    if not (0 <= x < 1):
        raise ValueError(f"shift x must lie in [0, 1), got {x}")


def nu_n(x, n: int) -> int:
    """den(x)^n * prod_{q | den(x)} q^floor(n/(q-1))."""
    x = as_rational(x)
    _check_shift(x)
    q = x.denominator
    out = q**n
    for p in prime_divisors(q):
        out *= p ** (n // (p - 1))
    return out


def d_n(x, n: int) -> int:
    """lcm of the reduced denominators of 1/(k+x), k = 1..n."""
    x = as_rational(x)
    _check_shift(x)
    if n < 1:
        raise ValueError("d_n needs n >= 1")
    # 1/(k + a/q) = q/(kq + a); its reduced denominator is (kq+a)/gcd(kq+a, q)
    a, q = x.numerator, x.denominator
    out = 1
    for k in range(1, n + 1):
        m = k * q + a
        out = math.lcm(out, m // math.gcd(m, q))
    return out


def kappa_n(den_beta: int, x, n: int) -> int:
    x = as_rational(x)
    return x.denominator * nu_n(x, n) * d_n(x, n) * den_beta**n


def pochhammer(a, k: int) -> Fraction:
    a = as_rational(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


# ---------------------------------------------------------------------------
# truncated Laurent series in 1/z


class SeriesOrderError(ValueError):
    pass


class TruncatedSeries:
    """Finite polynomial part in z plus a 1/z tail known up to (1/z)^order.

    ``coeffs`` maps the exponent of z to its coefficient.  ``order`` is None
    for an exact (finitely supported) series; otherwise coefficients of
    z^e are known exactly for every e >= -order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: dict[int, Fraction], order: int | None):
        object.__setattr__(self, "order", order)
        lo = None if order is None else -order
        object.__setattr__(
            self,
            "coeffs",
            {e: Fraction(c) for e, c in coeffs.items() if c != 0 and (lo is None or e >= lo)},
        )

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def from_poly(cls, p: Poly) -> "TruncatedSeries":
        return cls({i: c for i, c in enumerate(p.coeffs)}, None)

    def top_degree(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def coeff(self, e: int) -> Fraction:
        if self.order is not None and e < -self.order:
            raise SeriesOrderError(f"coefficient of z^{e} beyond truncation order {self.order}")
        return self.coeffs.get(e, Fraction(0))

    @staticmethod
    def _min_order(a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return TruncatedSeries(out, self._min_order(self.order, other.order))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        # unknown tail of one factor pollutes exponents below -order + top of the other
        orders = []
        for s, o in ((self, other), (other, self)):
            if s.order is not None:
                top = o.top_degree()
                orders.append(s.order - (top if top is not None else 0))
        order = min(orders) if orders else None
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if order is not None and e < -order:
                    continue
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return TruncatedSeries(out, order)

    def valuation(self) -> int | None:
        """Largest v with the series in (1/z^v), i.e. minus the top exponent.

        Returns None when every known coefficient vanishes.
        """
        top = self.top_degree()
        return None if top is None else -top

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        return f"TruncatedSeries({dict(sorted(self.coeffs.items(), reverse=True))}, order={self.order})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a - b


def series_coeff(s: TruncatedSeries, e: int) -> Fraction:
    return s.coeff(e)


# ---------------------------------------------------------------------------
# log-exact constants r * e^s * prod q^e


class LogExactConstant:
    """Positive real r * exp(s) * prod q_i^(e_i) held exactly."""

    __slots__ = ("rational", "exp_exponent", "prime_powers")

    def __init__(self, rational=1, exp_exponent=0, prime_powers: Iterable[tuple[int, object]] = ()):
        r = as_rational(rational)
        if r <= 0:
            raise ValueError("LogExactConstant needs a positive rational factor")
        merged: dict[int, Fraction] = {}
        for q, e in prime_powers:
            if not _is_probable_prime(q):
                raise ValueError(f"{q} is not prime")
            merged[q] = merged.get(q, Fraction(0)) + as_rational(e)
        object.__setattr__(self, "rational", r)
        object.__setattr__(self, "exp_exponent", as_rational(exp_exponent))
        object.__setattr__(
            self, "prime_powers", tuple(sorted((q, e) for q, e in merged.items() if e != 0))
        )

    def __setattr__(self, name, value):
        raise AttributeError("LogExactConstant is immutable")

    def canonical(self) -> tuple[Fraction, tuple[tuple[int, Fraction], ...]]:
        """(s, prime exponents) with the rational factor folded into the primes."""
        merged = dict(self.prime_powers)
        for sign, n in ((1, self.rational.numerator), (-1, self.rational.denominator)):
            for p, k in factorize(n) if n > 1 else ():
                merged[p] = merged.get(p, Fraction(0)) + sign * k
        return self.exp_exponent, tuple(sorted((q, e) for q, e in merged.items() if e != 0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogExactConstant):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __mul__(self, other: "LogExactConstant") -> "LogExactConstant":
        return LogExactConstant(
            self.rational * other.rational,
            self.exp_exponent + other.exp_exponent,
            self.prime_powers + other.prime_powers,
        )

    def log(self, prec: int = 128):
        """Ball enclosing log r + s + sum e*log q."""
        from .balls import RealBall

        out = RealBall.from_rational(self.rational, prec).log() + RealBall.from_rational(
            self.exp_exponent, prec
        )
        for q, e in self.prime_powers:
            out = out + RealBall.from_rational(q, prec).log() * RealBall.from_rational(e, prec)
        return out

    def to_str(self) -> str:
        parts = []
        if self.rational != 1 or not (self.exp_exponent or self.prime_powers):
            parts.append(str(self.rational))
        if self.exp_exponent:
            parts.append(f"e^({self.exp_exponent})")
        parts.extend(f"{q}^({e})" for q, e in self.prime_powers)
        return " * ".join(parts)

    def to_json(self) -> dict:
        return {
            "rational": str(self.rational),
            "exp": str(self.exp_exponent),
            "primes": [[q, str(e)] for q, e in self.prime_powers],
        }

    @classmethod
    def from_json(cls, d: dict) -> "LogExactConstant":
        return cls(Fraction(d["rational"]), Fraction(d["exp"]), [(int(q), Fraction(e)) for q, e in d["primes"]])

    def __repr__(self) -> str:
        return f"LogExactConstant({self.to_str()})"


def nu(x) -> LogExactConstant:
    """den(x) * prod_{q | den(x)} q^(1/(q-1))."""
    x = as_rational(x)
    _check_shift(x)
    q = x.denominator
    return LogExactConstant(q, 0, [(p, Fraction(1, p - 1)) for p in prime_divisors(q)])
