"""Exact Chern-character arithmetic on index-2 Fano threefolds of Picard rank one.

Cohomology of even degree is one-dimensional in every degree, so a numerical
class is stored as four rationals ``(a0, a1, a2, a3)`` with

    ch(E) = a0 + a1*H + a2*H^2 + a3*H^3

where ``H`` is the ample generator and ``H^3 = d``.  Everything here is exact
(``fractions.Fraction``); there are no tolerances.
"""
from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

DEFAULT_DENOM_GATE = (1, 1, 2, 6)
DENOM_GATE_ENV = "FANO_WALLS_DENOM_GATE"


class InconsistentDimensionError(ValueError):
    """No class with the requested support dimension has this Hilbert polynomial."""


class UndefinedOrderError(ValueError):
    """Reduced Hilbert polynomials are only ordered for positive leading coefficients."""


class IntegralityWarning(UserWarning):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class FanoContext:
    """Numerical data of an index-2, Picard-rank-1 Fano threefold of degree ``d``.

    ``c1 = 2H`` and ``chi(O_Y) = 1`` force ``c1*c2 = 24``, hence ``H*c2 = 12``.
    """

    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or not 1 <= self.degree <= 5:
            raise ValueError(f"degree must be an integer in 1..5, got {self.degree!r}")

    @property
    def h3(self) -> int:
        return self.degree

    @property
    def c1(self) -> int:
        return 2

    @property
    def h_c2(self) -> int:
        return 12

    @property
    def todd_weights(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Weights ``(t0, t1, t2, t3)`` with which ``a3, a2, a1, a0`` enter chi."""
        d = self.degree
        # td = 1 + c1/2 + (c1^2 + c2)/12 + c1 c2/24, integrated against ch
        return (
            Fraction(d),
            Fraction(self.c1 * d, 2),
            Fraction(self.c1 ** 2 * d + self.h_c2, 12),
            Fraction(self.c1 * self.h_c2, 24),
        )

    def to_json(self) -> dict:
        return {"degree": self.degree}

    @classmethod
    def from_json(cls, obj: dict) -> "FanoContext":
        return cls(int(obj["degree"]))


@dataclass(frozen=True)
class ChernCharacter:
    a0: Fraction = Fraction(0)
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "a3"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @classmethod
    def of(cls, *coeffs) -> "ChernCharacter":
        """``ChernCharacter.of(1, 0, '-1/2')`` with missing trailing entries zero."""
        if len(coeffs) == 1 and not isinstance(coeffs[0], (int, str, Fraction)):
            coeffs = tuple(coeffs[0])
        if len(coeffs) > 4:
            raise ValueError("a Chern character has at most four components")
        vals = [Fraction(c) for c in coeffs] + [Fraction(0)] * (4 - len(coeffs))
        return cls(*vals)

    def __iter__(self):
        return iter((self.a0, self.a1, self.a2, self.a3))

    def __getitem__(self, i: int) -> Fraction:
        return self.as_tuple()[i]

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a0, self.a1, self.a2, self.a3)

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        if not isinstance(other, ChernCharacter):
            return NotImplemented
        return ChernCharacter(*(x + y for x, y in zip(self, other)))

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        if not isinstance(other, ChernCharacter):
            return NotImplemented
        return ChernCharacter(*(x - y for x, y in zip(self, other)))

    def __neg__(self) -> "ChernCharacter":
        return ChernCharacter(*(-x for x in self))

    def __mul__(self, k) -> "ChernCharacter":
        if isinstance(k, ChernCharacter):
            return product(self, k)
        if isinstance(k, float):
            return NotImplemented
        k = Fraction(k)
        return ChernCharacter(*(k * x for x in self))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self)

    def truncated(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a0, self.a1, self.a2)

    def __str__(self) -> str:
        return "ch(" + ",".join(str(x) for x in self) + ")"

    def to_json(self) -> dict:
        return {f"a{i}": str(x) for i, x in enumerate(self)}

    @classmethod
    def from_json(cls, obj: dict) -> "ChernCharacter":
        return cls(*(Fraction(obj[f"a{i}"]) for i in range(4)))


@dataclass(frozen=True)
class HilbertPolynomial:
    """``P(t) = p0 + p1 t + p2 t^2 + p3 t^3``."""

    p0: Fraction = Fraction(0)
    p1: Fraction = Fraction(0)
    p2: Fraction = Fraction(0)
    p3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("p0", "p1", "p2", "p3"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.p0, self.p1, self.p2, self.p3)

    def __call__(self, t) -> Fraction:
        t = as_fraction(t)
        return ((self.p3 * t + self.p2) * t + self.p1) * t + self.p0

    @property
    def degree(self) -> int:
        for k in (3, 2, 1, 0):
            if self.coefficients[k]:
                return k
        return -1

    def __str__(self) -> str:
        terms = []
        for k in (3, 2, 1, 0):
            c = self.coefficients[k]
            if c:
                mono = {0: "", 1: "t", 2: "t^2", 3: "t^3"}[k]
                coef = str(c) if (c != 1 or k == 0) else ""
                terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    def to_json(self) -> dict:
        return {f"p{i}": str(c) for i, c in enumerate(self.coefficients)}


UNIT = ChernCharacter(1)


def point_class(ctx: FanoContext) -> ChernCharacter:
    """Class of a skyscraper sheaf: ``H^3 / d``."""
    return ChernCharacter(0, 0, 0, Fraction(1, ctx.degree))


def line_class(ctx: FanoContext) -> ChernCharacter:
    """Class of ``O_l`` for a line ``l``: ``H^2/d`` (``H.l = 1``)."""
    return ChernCharacter(0, 0, Fraction(1, ctx.degree), 0)


def twist(E: ChernCharacter, beta: Rational) -> ChernCharacter:
    """``e^{-beta H} * ch(E)``."""
    b = as_fraction(beta)
    a0, a1, a2, a3 = E
    return ChernCharacter(
        a0,
        a1 - b * a0,
        a2 - b * a1 + b * b * a0 / 2,
        a3 - b * a2 + b * b * a1 / 2 - b ** 3 * a0 / 6,
    )


def tensor_line(E: ChernCharacter, k: int) -> ChernCharacter:
    """``ch(E (x) O(kH))``."""
    return twist(E, -as_fraction(k))


def line_bundle(k: int) -> ChernCharacter:
    return tensor_line(UNIT, k)


def dual(E: ChernCharacter) -> ChernCharacter:
    return ChernCharacter(E.a0, -E.a1, E.a2, -E.a3)


def product(E: ChernCharacter, F: ChernCharacter) -> ChernCharacter:
    """Cup product in ``Q[H]/H^4``."""
    a, b = E.as_tuple(), F.as_tuple()
    return ChernCharacter(*(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(4)))


def chi(ctx: FanoContext, E: ChernCharacter) -> Fraction:
    """Euler characteristic by Hirzebruch-Riemann-Roch."""
    t0, t1, t2, t3 = ctx.todd_weights
    return t0 * E.a3 + t1 * E.a2 + t2 * E.a1 + t3 * E.a0


def euler_pairing(ctx: FanoContext, E: ChernCharacter, F: ChernCharacter) -> Fraction:
    """``chi(E, F) = sum (-1)^i ext^i(E, F)``."""
    return chi(ctx, product(dual(E), F))


def hilbert_polynomial(ctx: FanoContext, E: ChernCharacter) -> HilbertPolynomial:
    # chi(E(t)) expanded symbolically in t: e^{tH} = sum t^j H^j / j!
    t0, t1, t2, t3 = ctx.todd_weights
    a = E.as_tuple()
    weights = (t3, t2, t1, t0)  # weight of H^k in chi
    coeffs = [Fraction(0)] * 4
    fact = (1, 1, 2, 6)
    for i in range(4):
        for j in range(4 - i):
            coeffs[j] += a[i] * weights[i + j] / fact[j]
    return HilbertPolynomial(*coeffs)


def class_from_hilbert(ctx: FanoContext, P: HilbertPolynomial, dim: int) -> ChernCharacter:
    """Invert :func:`hilbert_polynomial` on classes supported in dimension ``dim``.

    The class is forced to have ``a_i = 0`` for ``i < 3 - dim``; the remaining
    ``dim + 1`` unknowns are solved from the ``dim + 1`` lowest coefficients of
    ``P`` (the linear system is triangular).  Raises
    :class:`InconsistentDimensionError` if ``P`` has degree above ``dim``.
    """
    if dim not in (0, 1, 2, 3):
        raise ValueError("dim must be 0, 1, 2 or 3")
    if P.degree > dim:
        raise InconsistentDimensionError(
            f"Hilbert polynomial of degree {P.degree} cannot come from a class of dimension {dim}"
        )
    t0, t1, t2, t3 = ctx.todd_weights
    weights = (t3, t2, t1, t0)
    fact = (1, 1, 2, 6)
    lowest = 3 - dim
    a = [Fraction(0)] * 4
    # coefficient of t^j only involves a_i with i + j <= 3; a_{3-j} enters
    # t^j with weight weights[3] / j!, so solve from the top coefficient down
    for j in range(dim, -1, -1):
        i_new = 3 - j
        rest = sum(a[i] * weights[i + j] / fact[j] for i in range(lowest, 4) if i != i_new and i + j <= 3)
        a[i_new] = (P.coefficients[j] - rest) * fact[j] / weights[3]
    E = ChernCharacter(*a)
    if hilbert_polynomial(ctx, E) != P:
        raise InconsistentDimensionError("no class with this support dimension matches P")
    return E


def reduced_hilbert(ctx: FanoContext, E: ChernCharacter) -> HilbertPolynomial:
    P = hilbert_polynomial(ctx, E)
    if P.degree < 0:
        raise UndefinedOrderError("zero Hilbert polynomial has no reduced form")
    lead = P.coefficients[P.degree]
    if lead <= 0:
        raise UndefinedOrderError(f"leading coefficient {lead} is not positive")
    return HilbertPolynomial(*(c / lead for c in P.coefficients))


def compare_reduced_hilbert(ctx: FanoContext, E: ChernCharacter, F: ChernCharacter) -> int:
    """Gieseker-style comparison: -1, 0 or 1 as ``p_E`` is <, = or > ``p_F``.

    Polynomials of larger degree are larger (as for the Gieseker order on
    sheaves of different dimension); equal degrees compare lexicographically
    from the top coefficient down, i.e. as ``t -> infinity``.
    """
    pE, pF = reduced_hilbert(ctx, E), reduced_hilbert(ctx, F)
    if pE.degree != pF.degree:
        return 1 if pE.degree > pF.degree else -1
    for k in range(pE.degree, -1, -1):
        x, y = pE.coefficients[k], pF.coefficients[k]
        if x != y:
            return -1 if x < y else 1
    return 0


def denom_gate_from_env() -> tuple[int, ...]:
    raw = os.environ.get(DENOM_GATE_ENV)
    if not raw:
        return DEFAULT_DENOM_GATE
    parts = tuple(int(p) for p in raw.replace(" ", "").split(","))
    if len(parts) != 4 or any(p <= 0 for p in parts):
        raise ValueError(f"{DENOM_GATE_ENV} must be four positive integers, got {raw!r}")
    return parts


def passes_integrality(E: ChernCharacter, denoms: Sequence[int] | None = None) -> bool:
    denoms = tuple(denoms) if denoms is not None else denom_gate_from_env()
    return all((x * m).denominator == 1 for x, m in zip(E, denoms))


def check_integrality(E: ChernCharacter, denoms: Sequence[int] | None = None) -> bool:
    """Warn (never raise) when ``E`` misses the integrality gate."""
    ok = passes_integrality(E, denoms)
    if not ok:
        warnings.warn(f"{E} fails the integrality gate {denoms or denom_gate_from_env()}",
                      IntegralityWarning, stacklevel=2)
    return ok


def sum_classes(classes: Iterable[ChernCharacter]) -> ChernCharacter:
    total = ChernCharacter()
    for c in classes:
        total = total + c
    return total
