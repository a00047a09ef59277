"""The rank-2 numerical lattice of the Kuznetsov component.

Classes are integer pairs ``(x, y)`` meaning ``x*k1 + y*k2`` with

    k1 = 1 - H^2/d,        k2 = H - H^2/2 - (6 - d) H^3 / (6d).

Operators act on column vectors from the left.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .numclass import (
    UNIT,
    ChernCharacter,
    FanoContext,
    euler_pairing,
    tensor_line,
)

Matrix = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


class NonExceptionalError(ValueError):
    """Mutation across a class whose Euler pairing with itself is not 1."""


class BasisResolutionError(ValueError):
    """A Chern character does not lie in the integral span of k1, k2."""


@dataclass(frozen=True, order=True)
class KuClass:
    x: int
    y: int

    def __add__(self, other: "KuClass") -> "KuClass":
        return KuClass(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "KuClass") -> "KuClass":
        return KuClass(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "KuClass":
        return KuClass(-self.x, -self.y)

    def __mul__(self, k: int) -> "KuClass":
        return KuClass(k * self.x, k * self.y)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return _format_ku(self.x, self.y)

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y}

    @classmethod
    def from_json(cls, obj: dict) -> "KuClass":
        return cls(int(obj["x"]), int(obj["y"]))


K1 = KuClass(1, 0)
K2 = KuClass(0, 1)


def _format_ku(x: int, y: int) -> str:
    parts = []
    for coef, sym in ((x, "k1"), (y, "k2")):
        if coef == 0:
            continue
        mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
        sign = "-" if coef < 0 else ("+" if parts else "")
        parts.append(f"{sign}{mag}{sym}")
    return "".join(parts) or "0"


@dataclass(frozen=True)
class LatticeOperator:
    """2x2 matrix in the (k1, k2) basis; columns are images of k1 and k2."""

    matrix: Matrix
    name: str = ""

    def __post_init__(self):
        m = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if self.det() == 0:
            raise ValueError(f"operator {self.name or m} is not invertible")

    @classmethod
    def identity(cls) -> "LatticeOperator":
        return cls(((1, 0), (0, 1)), "id")

    def det(self) -> Fraction:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def __call__(self, k: KuClass) -> KuClass:
        (a, b), (c, d) = self.matrix
        x, y = a * k.x + b * k.y, c * k.x + d * k.y
        if x.denominator != 1 or y.denominator != 1:
            raise BasisResolutionError(f"{self.name} does not map {k} to an integral class")
        return KuClass(int(x), int(y))

    def __matmul__(self, other: "LatticeOperator") -> "LatticeOperator":
        return LatticeOperator(_matmul(self.matrix, other.matrix), f"{self.name}*{other.name}")

    def __neg__(self) -> "LatticeOperator":
        return LatticeOperator(tuple(tuple(-v for v in row) for row in self.matrix), f"-{self.name}")

    def __pow__(self, n: int) -> "LatticeOperator":
        if n < 0:
            return self.inverse() ** (-n)
        result = LatticeOperator.identity()
        for _ in range(n):
            result = result @ self
        return LatticeOperator(result.matrix, f"{self.name}^{n}")

    def inverse(self) -> "LatticeOperator":
        (a, b), (c, d) = self.matrix
        det = self.det()
        return LatticeOperator(((d / det, -b / det), (-c / det, a / det)), f"{self.name}^-1")

    def transpose(self) -> "LatticeOperator":
        (a, b), (c, d) = self.matrix
        return LatticeOperator(((a, c), (b, d)), f"{self.name}^T")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeOperator):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def as_lists(self) -> list[list[int | str]]:
        return [[int(v) if v.denominator == 1 else str(v) for v in row] for row in self.matrix]


def _matmul(m: Matrix, n: Matrix) -> Matrix:
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def kappa1(ctx: FanoContext) -> ChernCharacter:
    return ChernCharacter(1, 0, Fraction(-1, ctx.degree), 0)


def kappa2(ctx: FanoContext) -> ChernCharacter:
    d = ctx.degree
    return ChernCharacter(0, 1, Fraction(-1, 2), Fraction(-(6 - d), 6 * d))


def embed(ctx: FanoContext, k: KuClass) -> ChernCharacter:
    return k.x * kappa1(ctx) + k.y * kappa2(ctx)


def resolve(ctx: FanoContext, E: ChernCharacter) -> KuClass:
    """Write ``E`` as ``x*k1 + y*k2`` with integers ``x, y``.

    ``a0`` and ``a1`` determine ``x`` and ``y``; the remaining components must
    then agree exactly.
    """
    x, y = E.a0, E.a1
    if x.denominator != 1 or y.denominator != 1:
        raise BasisResolutionError(f"{E} has non-integral k-coordinates ({x}, {y})")
    k = KuClass(int(x), int(y))
    if embed(ctx, k) != E:
        raise BasisResolutionError(f"{E} is not in the span of k1, k2")
    return k


def euler_matrix(d: int) -> LatticeOperator:
    """Gram matrix ``[chi(k_i, k_j)]`` of the Euler form."""
    return LatticeOperator(((-1, -1), (1 - d, -d)), f"chi_{d}")


def euler_matrix_from_classes(ctx: FanoContext) -> LatticeOperator:
    """The same Gram matrix, recomputed by Riemann-Roch on the embedded basis."""
    basis = (kappa1(ctx), kappa2(ctx))
    rows = tuple(tuple(euler_pairing(ctx, a, b) for b in basis) for a in basis)
    return LatticeOperator(rows, f"chi_{ctx.degree}")


def euler_form_ku(d: int, a: KuClass, b: KuClass) -> int:
    (m11, m12), (m21, m22) = euler_matrix(d).matrix
    val = a.x * (m11 * b.x + m12 * b.y) + a.y * (m21 * b.x + m22 * b.y)
    return int(val)


def left_mutation(ctx: FanoContext, e: ChernCharacter, g: ChernCharacter) -> ChernCharacter:
    """Class of the cone of ``RHom(E, G) (x) E -> G``: ``g - chi(e, g) e``."""
    if euler_pairing(ctx, e, e) != 1:
        raise NonExceptionalError(f"chi({e}, {e}) = {euler_pairing(ctx, e, e)} != 1")
    return g - euler_pairing(ctx, e, g) * e


def rotate_class(ctx: FanoContext, E: ChernCharacter) -> ChernCharacter:
    """Numerical shadow of ``L_O(- (x) O(1))``."""
    return left_mutation(ctx, UNIT, tensor_line(E, 1))


def rotation(ctx: FanoContext) -> LatticeOperator:
    images = [resolve(ctx, rotate_class(ctx, embed(ctx, k))) for k in (K1, K2)]
    return LatticeOperator(((images[0].x, images[1].x), (images[0].y, images[1].y)), "R")


def serre_operator(d: int) -> LatticeOperator:
    """``S`` with ``chi(a, b) = chi(b, S a)``, i.e. ``S = E^-1 E^T``."""
    E = euler_matrix(d)
    S = E.inverse() @ E.transpose()
    return LatticeOperator(S.matrix, "S")


def minus_one_classes(d: int, box: int) -> list[KuClass]:
    if box < 2:
        raise ValueError("box must be at least 2")
    return [
        KuClass(x, y)
        for x in range(-box, box + 1)
        for y in range(-box, box + 1)
        if euler_form_ku(d, KuClass(x, y), KuClass(x, y)) == -1
    ]


@dataclass(frozen=True)
class Orbit:
    classes: tuple[KuClass, ...]
    period: int | None  # None when max_steps ran out before the cycle closed

    def __iter__(self) -> Iterator[KuClass]:
        return iter(self.classes)


def rotation_orbit(d: int, start: KuClass, max_steps: int = 64) -> Orbit:
    R = rotation(FanoContext(d))
    seen = [start]
    cur = start
    for _ in range(max_steps):
        cur = R(cur)
        if cur == start:
            return Orbit(tuple(seen), len(seen))
        seen.append(cur)
    return Orbit(tuple(seen), None)
