"""Exact decimal arithmetic helpers.

All energy figures in this package are decimal quantities (millijoules with
a couple of decimal places), and most of them are not representable in
binary floating point.  Computations that must match hand arithmetic --
model intercepts, per-packet energies, iteration floors, simulated battery
drain -- are therefore carried out on exact rationals and converted to
float only at the reporting boundary.

A float entering the exact pipeline is read at its shortest round-trip
decimal form, i.e. ``0.12`` means 12/100, not the 53-bit binary neighbour.
"""

from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

Number = int | float | str | Decimal | Fraction


def as_exact(x: Number) -> Fraction:
    """Exact rational value of ``x``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # repr() gives the shortest decimal that round-trips, which is the
        # number the user actually wrote.
        return Fraction(Decimal(repr(x)))
    if isinstance(x, (str, Decimal)):
        return Fraction(Decimal(x))
    raise TypeError(f"not a number: {x!r}")


def round_half_up(x: Number, ndigits: int = 2) -> float:
    """Decimal round-half-up, the reporting convention (2.675 -> 2.68)."""
    if isinstance(x, Fraction):
        d = Decimal(x.numerator) / Decimal(x.denominator)
    elif isinstance(x, Decimal):
        d = x
    else:
        d = Decimal(repr(float(x)))
    exp = Decimal(1).scaleb(-ndigits)
    return float(d.quantize(exp, rounding=ROUND_HALF_UP))
