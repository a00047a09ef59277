"""Small exact helpers: rational square-root brackets and simplest rationals."""
from __future__ import annotations

from fractions import Fraction
from math import floor, isqrt


def sqrt_bounds(x: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rationals ``lo <= sqrt(x) <= hi`` with ``hi - lo <= 2**-bits / den(x)``."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative input")
    p, q = x.numerator, x.denominator
    scale = 1 << bits
    r = isqrt(p * q * scale * scale)
    lo = Fraction(r, q * scale)
    hi = lo if r * r == p * q * scale * scale else Fraction(r + 1, q * scale)
    return lo, hi


def simplest_rational_in(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational of smallest denominator strictly inside ``(lo, hi)``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_rational_in(-hi, -lo)
    fl = floor(lo)
    if fl + 1 < hi:
        return Fraction(fl + 1)
    # lo, hi share the integer part fl and 0 <= lo - fl < hi - fl <= 1
    a, b = lo - fl, hi - fl
    if a == 0:
        # (0, b): 1/n with n the least integer having 1/n < b
        return fl + Fraction(1, floor(1 / b) + 1)
    # reciprocal flips the interval: (1/b, 1/a)
    return fl + 1 / simplest_rational_in(1 / b, 1 / a)
