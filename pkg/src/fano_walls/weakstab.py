"""Central charges, slopes and the Bogomolov-type forms of tilt stability.

Tilt parameters are carried as ``s = alpha^2`` so that every charge, slope and
wall stays rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .numclass import ChernCharacter, FanoContext, Rational, as_fraction, twist


@dataclass(frozen=True)
class TiltPoint:
    s: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s", as_fraction(self.s))
        object.__setattr__(self, "beta", as_fraction(self.beta))
        if self.s <= 0:
            raise ValueError(f"s = alpha^2 must be positive, got {self.s}")

    def to_json(self) -> dict:
        return {"s": str(self.s), "beta": str(self.beta)}

    @classmethod
    def from_json(cls, obj: dict) -> "TiltPoint":
        return cls(Fraction(obj["s"]), Fraction(obj["beta"]))


@dataclass(frozen=True)
class ChargeValue:
    re: Fraction
    im: Fraction

    def rotated(self) -> "ChargeValue":
        """``-i * Z``."""
        return ChargeValue(self.im, -self.re)

    def slope(self) -> "SlopeValue":
        if self.im == 0:
            return SlopeValue.infinite()
        return SlopeValue(-self.re / self.im)


@total_ordering
@dataclass(frozen=True)
class SlopeValue:
    """A rational slope or ``+inf`` (``value is None``)."""

    value: Fraction | None

    @classmethod
    def infinite(cls) -> "SlopeValue":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __lt__(self, other: "SlopeValue") -> bool:
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __str__(self) -> str:
        return "+inf" if self.value is None else str(self.value)


class DegenerateChargeError(ValueError):
    """The zero charge has no phase and cannot be ordered."""


def slope_mumford(ctx: FanoContext, E: ChernCharacter) -> SlopeValue:
    """``H^2 ch1 / H^3 ch0``; ``+inf`` for torsion classes."""
    if E.a0 == 0:
        return SlopeValue.infinite()
    return SlopeValue(ctx.degree * E.a1 / (ctx.degree * E.a0))


def z_tilt(ctx: FanoContext, E: ChernCharacter, p: TiltPoint) -> ChargeValue:
    d = ctx.degree
    tw = twist(E, p.beta)
    return ChargeValue(-d * tw.a2 + p.s / 2 * d * tw.a0, d * tw.a1)


def z_zero(ctx: FanoContext, E: ChernCharacter, p: TiltPoint) -> ChargeValue:
    return z_tilt(ctx, E, p).rotated()


def mu_tilt(ctx: FanoContext, E: ChernCharacter, p: TiltPoint) -> SlopeValue:
    return z_tilt(ctx, E, p).slope()


def mu_zero(ctx: FanoContext, E: ChernCharacter, p: TiltPoint) -> SlopeValue:
    return z_zero(ctx, E, p).slope()


def compare_charges(z1: ChargeValue, z2: ChargeValue) -> int:
    """Compare slopes ``-re/im`` without dividing.

    Charges are assumed to lie in the closed upper half plane (``im >= 0``);
    an ``im = 0`` charge has slope ``+inf``.  Returns -1, 0, 1.
    """
    for z in (z1, z2):
        if z.re == 0 and z.im == 0:
            raise DegenerateChargeError("zero charge")
        if z.im < 0:
            raise ValueError(f"charge {z} is not in the closed upper half plane")
    if z1.im == 0 or z2.im == 0:
        if z1.im == 0 and z2.im == 0:
            return 0
        return 1 if z1.im == 0 else -1
    lhs = -z1.re * z2.im
    rhs = -z2.re * z1.im
    return (lhs > rhs) - (lhs < rhs)


def q_form(ctx: FanoContext, E: ChernCharacter, beta: Rational = 0) -> Fraction:
    """Bogomolov discriminant ``(H^2 ch1^b)^2 - 2 (H ch2^b)(H^3 ch0)``; independent of ``beta``."""
    d = ctx.degree
    tw = twist(E, beta)
    return (d * tw.a1) ** 2 - 2 * (d * tw.a2) * (d * tw.a0)


def bms_inequality(ctx: FanoContext, E: ChernCharacter, s: Rational, beta: Rational) -> Fraction:
    """``s*Q + 4 (H ch2^b)^2 - 6 (H^2 ch1^b) ch3^b``; nonnegative on tilt-semistable objects.

    ``s = 0`` is allowed: the inequality is used on the boundary ``alpha = 0``.
    """
    s = as_fraction(s)
    if s < 0:
        raise ValueError("s must be nonnegative")
    d = ctx.degree
    tw = twist(E, beta)
    return s * q_form(ctx, E) + 4 * (d * tw.a2) ** 2 - 6 * (d * tw.a1) * (d * tw.a3)


def bms_ch3_bound(ctx: FanoContext, E: ChernCharacter, s: Rational, beta: Rational) -> Fraction | None:
    """Largest ``a3`` keeping :func:`bms_inequality` nonnegative, ``a0..a2`` fixed.

    The expression is affine in ``a3`` with slope ``-6 d^2 a1^b``; returns
    ``None`` when that slope vanishes (no bound on ``a3``) and raises if the
    bound is a lower bound instead.
    """
    d = ctx.degree
    slope = -6 * d * d * twist(E, beta).a1
    if slope == 0:
        return None
    if slope > 0:
        raise ValueError("ch1^beta < 0: the inequality bounds a3 from below")
    base = ChernCharacter(E.a0, E.a1, E.a2, 0)
    return -bms_inequality(ctx, base, s, beta) / slope


def in_region_v(p: TiltPoint) -> bool:
    """``0 < alpha < min(-beta, beta + 1)`` and ``-1 < beta < 0``, phrased in ``s``."""
    b = p.beta
    return -1 < b < 0 and 0 < p.s < min(b * b, (b + 1) * (b + 1))
