"""The reference table of mu bounds: inputs, printed values and comparison."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .inputs import BetaSpec
from .numfield import RootNear


@dataclass(frozen=True)
class TableRow:
    label: str
    beta: BetaSpec
    x: Fraction
    printed: str

    def tolerance(self) -> Decimal:
        """One unit in the last printed digit."""
        return Decimal(1).scaleb(Decimal(self.printed).as_tuple().exponent)

    def matches(self, value: float) -> bool:
        return abs(Decimal(repr(value)) - Decimal(self.printed)) <= self.tolerance()


def _poly(coeffs, near=None, label=""):
    return BetaSpec(poly=tuple(coeffs), root=RootNear(near) if near is not None else BetaSpec.root, label=label)


def _field(coeffs, near, expr, label=""):
    return BetaSpec(field_poly=tuple(coeffs), field_root=RootNear(near), expr=expr, label=label)


_A = 5**10
_CBRT5_OMEGA = complex(-0.8549879733, 1.4808826097)

_BETAS = {
    "2": _poly((-2, 1), label="2"),
    "2i": _poly((4, 0, 1), 2j, label="2i"),
    "2^24": _poly((-(2**24), 1), label="2^24"),
    "5^10+5^10i": _poly((2 * _A * _A, -2 * _A, 1), complex(_A, _A), label="5^10+5^10i"),
    "1000+cbrt(5)w": _field((-5, 0, 0, 1), _CBRT5_OMEGA, "1000+Y", label="1000+cbrt(5)w"),
    "3+2a": _field((2, 0, -3, 0, 2), complex(0.9354, 0.3536), "3+2*Y", label="3+2a"),
    "50+50*3^(1/4)i": _field((-3, 0, 0, 0, 1), 1.31607j, "50+50*Y", label="50+50*3^(1/4)i"),
    "-6-5sqrt2": _field((-2, 0, 1), 1.41421, "-6-5*Y", label="-6-5sqrt2"),
    "18+12sqrt2": _field((-2, 0, 1), 1.41421, "18+12*Y", label="18+12sqrt2"),
    "3364+2378sqrt2": _field((-2, 0, 1), 1.41421, "3364+2378*Y", label="3364+2378sqrt2"),
    "cbrt(7/6)/(cbrt(7/6)-1)": _field((-7, 0, 0, 6), 1.05273, "Y/(Y-1)", label="cbrt(7/6)/(cbrt(7/6)-1)"),
    "cbrt2/(cbrt2-1)": _field((-2, 0, 0, 1), 1.25992, "Y/(Y-1)", label="cbrt2/(cbrt2-1)"),
}

_PRINTED = [
    ("2", "0", "4.6221"),
    ("2i", "0", "2.61631"),
    ("2i", "1/3", "7.73819"),
    ("2i", "1/5", "8.63437"),
    ("2^24", "0", "2.1175"),
    ("2^24", "1/3", "2.42328"),
    ("2^24", "1/5", "2.44198"),
    ("5^10+5^10i", "0", "2.06402"),
    ("5^10+5^10i", "1/3", "2.20127"),
    ("5^10+5^10i", "1/5", "2.20906"),
    ("1000+cbrt(5)w", "0", "6.82514"),
    ("1000+cbrt(5)w", "1/3", "9.67602"),
    ("1000+cbrt(5)w", "1/5", "9.89516"),
    ("3+2a", "0", "11.2027"),
    ("50+50*3^(1/4)i", "0", "163.837"),
    ("-6-5sqrt2", "0", "6.47612"),
    ("-6-5sqrt2", "1/3", "50.0916"),
    ("-6-5sqrt2", "1/5", "77.9114"),
    ("18+12sqrt2", "0", "5.49683"),
    ("18+12sqrt2", "1/3", "13.7134"),
    ("18+12sqrt2", "1/5", "14.8937"),
    ("3364+2378sqrt2", "0", "4.44656"),
    ("3364+2378sqrt2", "1/3", "5.80557"),
    ("3364+2378sqrt2", "1/5", "5.9012"),
    ("cbrt(7/6)/(cbrt(7/6)-1)", "0", "11.5787"),
    ("cbrt(7/6)/(cbrt(7/6)-1)", "1/3", "240.384"),
    ("cbrt2/(cbrt2-1)", "0", "22.4389"),
]

TABLE_ROWS: list[TableRow] = [
    TableRow(b, _BETAS[b], Fraction(x), printed) for b, x, printed in _PRINTED
]
