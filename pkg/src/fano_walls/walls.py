"""Numerical walls of tilt stability and a certified search for candidate walls.

Coordinates.  For a class with truncation ``(a0, a1, a2)`` and a parameter
``beta`` we write ``r = a0``, ``c = a1 - beta*a0`` and
``e = a2 - beta*a1 + beta^2 a0 / 2``.  Up to the common factor ``d`` the tilt
charge is ``-e + s*r/2 + i*c`` and the discriminant is ``c^2 - 2 r e``.
Every condition used below is homogeneous in ``d``, so the factor is dropped.

Search strategy.  Walls for a fixed ``v`` form a pencil of circles: on each
side of the vertical wall they are nested semicircles whose diameters all
contain one limit point.  A wall meeting a window portion that lies entirely
on one side of its limit point therefore crosses the vertical line through
the portion's edge nearest to that point.  On that probe line ``Im Z`` lives
in ``(1/q)Z`` and the discriminant filters confine the remaining coordinates
to an explicit finite box, so the enumeration there is exhaustive.
"""
from __future__ import annotations

import random
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterator, Sequence

from ._rational import simplest_rational_in, sqrt_bounds
from .numclass import ChernCharacter, FanoContext, Rational, as_fraction, twist
from .weakstab import TiltPoint, q_form, z_tilt


class ScanIncompleteWarning(UserWarning):
    """The enumeration could not certify that every candidate was found."""


class NotApplicableError(ValueError):
    """The minimal-imaginary-part argument does not apply to this class."""


# --------------------------------------------------------------------------
# wall loci


@dataclass(frozen=True)
class VerticalWall:
    beta0: Fraction
    destabilizer: ChernCharacter | None = field(default=None, compare=False, hash=False)

    kind = "vertical"

    def __post_init__(self):
        object.__setattr__(self, "beta0", as_fraction(self.beta0))

    def s_at(self, beta: Fraction) -> Fraction | None:
        return None

    def to_json(self) -> dict:
        out = {"type": "vertical", "beta0": str(self.beta0)}
        if self.destabilizer is not None:
            out["destabilizer"] = self.destabilizer.to_json()
        return out


@dataclass(frozen=True)
class SemicircleWall:
    center: Fraction
    radius_sq: Fraction
    destabilizer: ChernCharacter | None = field(default=None, compare=False, hash=False)

    kind = "semicircle"

    def __post_init__(self):
        object.__setattr__(self, "center", as_fraction(self.center))
        object.__setattr__(self, "radius_sq", as_fraction(self.radius_sq))
        if self.radius_sq <= 0:
            raise ValueError(f"degenerate semicircle: radius_sq = {self.radius_sq}")

    def s_at(self, beta: Fraction) -> Fraction:
        """Height ``s = alpha^2`` of the wall above ``beta`` (nonpositive off the wall)."""
        return self.radius_sq - (beta - self.center) ** 2

    def crosses(self, beta: Fraction) -> bool:
        return self.s_at(beta) > 0

    def encloses(self, other: "SemicircleWall") -> bool:
        """Closed disk of ``other`` inside the closed disk of ``self``."""
        # |c1 - c2| <= r1 - r2  <=>  r2 <= r1 and (c1-c2)^2 <= (r1-r2)^2
        if other.radius_sq > self.radius_sq:
            return False
        lhs = (self.center - other.center) ** 2 - self.radius_sq - other.radius_sq
        # (c1-c2)^2 - r1^2 - r2^2 <= -2 r1 r2
        if lhs > 0:
            return False
        return lhs * lhs >= 4 * self.radius_sq * other.radius_sq

    def to_json(self) -> dict:
        out = {"type": "semicircle", "center": str(self.center), "radius_sq": str(self.radius_sq)}
        if self.destabilizer is not None:
            out["destabilizer"] = self.destabilizer.to_json()
        return out


class _Sentinel:
    __slots__ = ("kind",)

    def __init__(self, kind: str):
        self.kind = kind

    def __repr__(self) -> str:
        return self.kind.capitalize()

    def to_json(self) -> dict:
        return {"type": self.kind}

    def __reduce__(self):
        return (_sentinel, (self.kind,))


def _sentinel(kind: str) -> _Sentinel:
    return EVERYWHERE if kind == "everywhere" else NOWHERE


EVERYWHERE = _Sentinel("everywhere")
NOWHERE = _Sentinel("nowhere")

Wall = VerticalWall | SemicircleWall


def wall_from_json(obj: dict):
    kind = obj["type"]
    dest = ChernCharacter.from_json(obj["destabilizer"]) if "destabilizer" in obj else None
    if kind == "vertical":
        return VerticalWall(Fraction(obj["beta0"]), dest)
    if kind == "semicircle":
        return SemicircleWall(Fraction(obj["center"]), Fraction(obj["radius_sq"]), dest)
    if kind in ("everywhere", "nowhere"):
        return _sentinel(kind)
    raise ValueError(f"unknown wall type {kind!r}")


def _cross(v: ChernCharacter, u: ChernCharacter) -> tuple[Fraction, Fraction, Fraction]:
    """Cross product of the truncations; the wall is ``X(s+b^2)/2 + bY + W = 0``."""
    X = v.a0 * u.a1 - u.a0 * v.a1
    Y = v.a2 * u.a0 - u.a2 * v.a0
    W = u.a2 * v.a1 - v.a2 * u.a1
    return X, Y, W


def numerical_wall(ctx: FanoContext, v: ChernCharacter, u: ChernCharacter):
    """Locus where ``v`` and ``u`` have equal tilt slope.

    Returns a :class:`SemicircleWall`, a :class:`VerticalWall`, ``EVERYWHERE``
    (proportional truncations) or ``NOWHERE``.
    """
    X, Y, W = _cross(v, u)
    if X == 0:
        if Y == 0:
            return EVERYWHERE if W == 0 else NOWHERE
        return VerticalWall(-W / Y, u)
    center = -Y / X
    radius_sq = center * center - 2 * W / X
    if radius_sq <= 0:
        return NOWHERE
    return SemicircleWall(center, radius_sq, u)


def slope_identity(ctx: FanoContext, v: ChernCharacter, u: ChernCharacter, s: Rational, beta: Rational) -> Fraction:
    """``Re Z(v) Im Z(u) - Re Z(u) Im Z(v)``; vanishes exactly on the wall."""
    p = TiltPoint(s, beta)
    zv, zu = z_tilt(ctx, v, p), z_tilt(ctx, u, p)
    return zv.re * zu.im - zu.re * zv.im


def _coords(E: ChernCharacter, beta: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    tw = twist(E, beta)
    return tw.a0, tw.a1, tw.a2


def _disc(E: ChernCharacter) -> Fraction:
    return E.a1 * E.a1 - 2 * E.a0 * E.a2


def heart_sign(E: ChernCharacter, beta: Fraction) -> int:
    """``+1`` or ``-1`` so that ``sign * E`` has ``Im Z > 0`` at ``beta``.

    When ``Im Z`` vanishes the sign makes ``rank < 0`` (for ``s`` small the
    real part then has the sign of the rank); ``0`` for a class with
    ``r = c = 0``.
    """
    r, c, _ = _coords(E, beta)
    if c != 0:
        return 1 if c > 0 else -1
    if r != 0:
        return 1 if r < 0 else -1
    return 0


# --------------------------------------------------------------------------
# windows, bounds, results


@dataclass(frozen=True)
class Window:
    beta_min: Fraction
    beta_max: Fraction
    s_max: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "beta_min", as_fraction(self.beta_min))
        object.__setattr__(self, "beta_max", as_fraction(self.beta_max))
        if self.s_max is not None:
            object.__setattr__(self, "s_max", as_fraction(self.s_max))
            if self.s_max <= 0:
                raise ValueError("s_max must be positive")
        if not self.beta_min < self.beta_max:
            raise ValueError(f"empty window ({self.beta_min}, {self.beta_max})")

    def to_json(self) -> dict:
        return {
            "beta_min": str(self.beta_min),
            "beta_max": str(self.beta_max),
            "s_max": None if self.s_max is None else str(self.s_max),
        }


@dataclass(frozen=True)
class ScanBounds:
    max_rank: int = 20
    max_c1_span: int = 40
    ch2_denominator: int | None = None  # None: 2d

    def __post_init__(self):
        if self.max_rank < 1 or self.max_c1_span < 1:
            raise ValueError("bounds must be positive")
        if self.ch2_denominator is not None and self.ch2_denominator < 1:
            raise ValueError("ch2_denominator must be positive")

    def denominator(self, ctx: FanoContext) -> int:
        return self.ch2_denominator or 2 * ctx.degree


@dataclass(frozen=True)
class CandidateWall:
    """A numerical wall passing the discriminant filters.

    ``destabilizer + cowall_class`` is the sign-normalized ``v`` (``Im Z > 0``
    along the wall); ``q_sub``, ``q_quot`` are the discriminants of the two
    pieces in ``d``-scaled units, as :func:`q_form` returns them.
    """

    wall: Wall
    destabilizer: ChernCharacter
    cowall_class: ChernCharacter
    q_sub: Fraction
    q_quot: Fraction
    witness: TiltPoint

    def to_json(self) -> dict:
        return {
            "wall": self.wall.to_json(),
            "destabilizer": self.destabilizer.to_json(),
            "cowall_class": self.cowall_class.to_json(),
            "q_sub": str(self.q_sub),
            "q_quot": str(self.q_quot),
            "witness": self.witness.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CandidateWall":
        return cls(
            wall_from_json(obj["wall"]),
            ChernCharacter.from_json(obj["destabilizer"]),
            ChernCharacter.from_json(obj["cowall_class"]),
            Fraction(obj["q_sub"]),
            Fraction(obj["q_quot"]),
            TiltPoint.from_json(obj["witness"]),
        )


@dataclass(frozen=True)
class ScanResult:
    """Candidate walls plus a completeness certificate.

    Iterates, indexes and compares like the list of candidates.
    """

    walls: tuple[CandidateWall, ...]
    complete: bool
    reasons: tuple[str, ...] = ()
    probes: tuple[Fraction, ...] = ()

    def __iter__(self) -> Iterator[CandidateWall]:
        return iter(self.walls)

    def __len__(self) -> int:
        return len(self.walls)

    def __getitem__(self, i):
        return self.walls[i]

    def __eq__(self, other):
        if isinstance(other, (list, tuple)):
            return list(self.walls) == list(other)
        if isinstance(other, ScanResult):
            return (self.walls, self.complete, self.reasons) == (other.walls, other.complete, other.reasons)
        return NotImplemented

    __hash__ = None

    def loci(self) -> list:
        return [c.wall for c in self.walls]

    def to_json(self) -> dict:
        return {
            "walls": [c.to_json() for c in self.walls],
            "complete": self.complete,
            "reasons": list(self.reasons),
            "probes": [str(p) for p in self.probes],
        }


# --------------------------------------------------------------------------
# geometry helpers


def _sqrt_lower(x: Fraction, bits: int = 40) -> Fraction:
    return sqrt_bounds(x, bits)[0]


def _sqrt_upper(x: Fraction, bits: int = 40) -> Fraction:
    return sqrt_bounds(x, bits)[1]


def _lt_sqrt(y: Fraction, x: Fraction) -> bool:
    """``y < sqrt(x)`` exactly."""
    return y < 0 or y * y < x


def window_point(wall: Wall, window: Window) -> TiltPoint | None:
    """A rational point of ``wall`` strictly inside ``window``, or ``None``."""
    lo, hi = window.beta_min, window.beta_max
    if isinstance(wall, VerticalWall):
        if not lo < wall.beta0 < hi:
            return None
        s = window.s_max / 2 if window.s_max is not None else Fraction(1)
        return TiltPoint(s, wall.beta0)
    c, rho2 = wall.center, wall.radius_sq
    # need t = |beta - c| with t^2 in (rho2 - s_max, rho2)
    floor_sq = max(Fraction(0), rho2 - window.s_max) if window.s_max is not None else None
    for bits in (8, 16, 32, 64, 128):
        t_hi = _sqrt_lower(rho2, bits)
        if t_hi * t_hi == rho2:
            t_hi -= Fraction(1, 1 << bits)
        if floor_sq is None:
            intervals = [(c - t_hi, c + t_hi)] if t_hi > 0 else []
        else:
            t_lo = _sqrt_upper(floor_sq, bits)
            if floor_sq > 0 and t_lo * t_lo == floor_sq:
                t_lo += Fraction(1, 1 << bits)
            if t_lo >= t_hi:
                continue
            if floor_sq == 0:
                intervals = [(c - t_hi, c + t_hi)]
            else:
                intervals = [(c - t_hi, c - t_lo), (c + t_lo, c + t_hi)]
        for a, b in intervals:
            a, b = max(a, lo), min(b, hi)
            if a < b:
                beta = simplest_rational_in(a, b) if a < b else a
                s = wall.s_at(beta)
                if s > 0 and (window.s_max is None or s < window.s_max):
                    return TiltPoint(s, beta)
    return None


def limit_points(v: ChernCharacter) -> tuple[Fraction | None, Fraction, Fraction]:
    """``(mu, Q, |r|)``: the limit points are ``mu +- sqrt(Q)/|r|`` (``r != 0``)."""
    if v.a0 == 0:
        return None, _disc(v), Fraction(0)
    return v.a1 / v.a0, _disc(v), abs(v.a0)


# --------------------------------------------------------------------------
# enumeration on one probe line


@dataclass(frozen=True)
class _ProbeTask:
    ctx_degree: int
    w: ChernCharacter
    beta: Fraction
    ks: tuple[int, ...]
    max_rank: int
    max_c1_span: int
    den: int
    seed: int | None


def _probe_slice(task: _ProbeTask) -> tuple[list[ChernCharacter], bool]:
    """Destabilizer candidates with ``Im Z = k/q`` at the probe, ``k`` in ``task.ks``.

    Returns the classes and whether a user cap truncated the box.
    """
    w, beta, den = task.w, task.beta, task.den
    q, p = beta.denominator, beta.numerator
    r_w, c_w, e_w = _coords(w, beta)
    kappa = _disc(w) / (c_w * c_w)
    a, b = r_w / c_w, e_w / c_w
    if b == 0:
        raise AssertionError("probe line through a limit point")
    mu_pen = max(Fraction(0), -4 * a * b)
    rng = random.Random(task.seed) if task.seed is not None else None
    found: list[ChernCharacter] = []
    truncated = False
    for k in task.ks:
        c = Fraction(k, q)
        cp = c_w - c
        A = max(c, cp) * kappa
        B2 = c * cp * kappa
        dmax = _sqrt_upper((A * A + mu_pen * B2) / (4 * b * b))
        lo_r, hi_r = ceil(c * a - dmax), floor(c * a + dmax)
        if lo_r < -task.max_rank or hi_r > task.max_rank:
            truncated = True
            lo_r, hi_r = max(lo_r, -task.max_rank), min(hi_r, task.max_rank)
        ranks = list(range(lo_r, hi_r + 1))
        if rng is not None:
            rng.shuffle(ranks)
        for a0 in ranks:
            # a1 = c + beta*a0 must be an integer
            if (k + p * a0) % q:
                continue
            a1 = c + beta * a0
            if abs(a1) > task.max_c1_span:
                truncated = True
                continue
            delta = a0 - c * a
            if delta == 0:
                continue  # proportional to w: no wall
            eps_end = B2 / (2 * delta)
            e_lo, e_hi = sorted((c * b, c * b + eps_end))
            # a2 = e + beta*a1 - beta^2 a0 / 2 ; open at e = c*b
            shift = beta * a1 - beta * beta * a0 / 2
            m_lo = floor((e_lo + shift) * den)
            m_hi = ceil((e_hi + shift) * den)
            for m in range(m_lo, m_hi + 1):
                a2 = Fraction(m, den)
                e = a2 - shift
                if not e_lo <= e <= e_hi or e == c * b:
                    continue
                found.append(ChernCharacter(a0, a1, a2, 0))
    return found, truncated


def _accept(ctx: FanoContext, w: ChernCharacter, u: ChernCharacter, window: Window,
            probe: Fraction | None) -> CandidateWall | None:
    wall = numerical_wall(ctx, w, u)
    if not isinstance(wall, (SemicircleWall, VerticalWall)):
        return None
    if isinstance(wall, SemicircleWall) and probe is not None and not wall.crosses(probe):
        return None
    quot = w - u
    q_sub, q_quot, q_tot = q_form(ctx, u), q_form(ctx, quot), q_form(ctx, w)
    if q_sub < 0 or q_quot < 0 or q_sub + q_quot > q_tot:
        return None
    pt = window_point(wall, window)
    if pt is None:
        return None
    zw, zu = z_tilt(ctx, w, pt), z_tilt(ctx, u, pt)
    if isinstance(wall, SemicircleWall):
        if not 0 < zu.im < zw.im:
            return None
    elif not (zu.im == 0 and zu.re < 0 and zw.re - zu.re < 0):
        return None
    if slope_identity(ctx, w, u, pt.s, pt.beta) != 0:
        raise AssertionError(f"witness {pt} is off the wall of {u}")
    return CandidateWall(wall, u, quot, q_sub, q_quot, pt)


def _candidate_key(c: CandidateWall):
    u = c.destabilizer
    return (abs(u.a0), abs(u.a1), abs(u.a2), u.a0, u.a1, u.a2)


def _wall_key(c: CandidateWall):
    w = c.wall
    if isinstance(w, VerticalWall):
        return (0, Fraction(0), w.beta0)
    return (1, -w.radius_sq, w.center)


def _dedupe(cands: Sequence[CandidateWall]) -> tuple[CandidateWall, ...]:
    best: dict = {}
    for c in cands:
        key = c.wall
        if key not in best or _candidate_key(c) < _candidate_key(best[key]):
            best[key] = c
    return tuple(sorted(best.values(), key=_wall_key))


# --------------------------------------------------------------------------
# probes


def _probes_for_region(v: ChernCharacter, lo: Fraction, hi: Fraction, side: int) -> tuple[list[Fraction], str | None]:
    """Probe lines covering every wall of ``v`` that meets ``(lo, hi)``.

    ``side`` is -1 (left of the vertical wall), +1 (right) or 0 (rank zero,
    one family of concentric walls).  Returns the probes and, when they do
    not certify completeness, the reason.
    """
    if side == 0:
        gamma = v.a2 / v.a1
        if gamma <= lo:
            return ([lo], None) if gamma < lo else (_straddle(gamma, lo, hi), "limit point on window edge")
        if gamma >= hi:
            return ([hi], None) if gamma > hi else (_straddle(gamma, lo, hi), "limit point on window edge")
        return _straddle(gamma, lo, hi), f"limit point {gamma} inside the window"
    mu, Q, absr = limit_points(v)
    # the limit point sits at distance sqrt(Q)/|r| from mu
    near, far = (hi, lo) if side < 0 else (lo, hi)
    if ((mu - far) * absr) ** 2 < Q:
        return [far], None  # limit point beyond the far edge: walls cross it
    if near != mu and ((mu - near) * absr) ** 2 > Q:
        return [near], None  # limit point between the near edge and mu
    ell_lo, ell_hi = _limit_bracket(v, side)
    return _straddle_irr(ell_lo, ell_hi, lo, hi), "limit point inside the window"


def _limit_bracket(v: ChernCharacter, side: int, bits: int = 40) -> tuple[Fraction, Fraction]:
    mu, Q, absr = limit_points(v)
    rlo, rhi = sqrt_bounds(Q, bits)
    if side < 0:
        return mu - rhi / absr, mu - rlo / absr
    return mu + rlo / absr, mu + rhi / absr


def _straddle(gamma: Fraction, lo: Fraction, hi: Fraction) -> list[Fraction]:
    return _straddle_irr(gamma, gamma, lo, hi)


def _straddle_irr(ell_lo: Fraction, ell_hi: Fraction, lo: Fraction, hi: Fraction,
                  depth: int = 6) -> list[Fraction]:
    """Simple rationals closing in on the limit point from both sides, inside ``[lo, hi]``.

    Walls nest around the limit point, so each probe catches every wall whose
    endpoint lies beyond it; only walls tighter than the last probe escape.
    """
    out: list[Fraction] = []
    for k in range(1, depth + 1):
        if lo < ell_lo:
            out.append(simplest_rational_in(ell_lo - (ell_lo - lo) / 2 ** k, ell_lo))
        if ell_hi < hi:
            out.append(simplest_rational_in(ell_hi, ell_hi + (hi - ell_hi) / 2 ** k))
    return sorted(set(out))


def _scan_probe(ctx: FanoContext, v: ChernCharacter, beta: Fraction, window: Window,
                bounds: ScanBounds, jobs: int, seed: int | None) -> tuple[list[CandidateWall], bool]:
    sign = heart_sign(v, beta)
    w = sign * v
    _, c_w, _ = _coords(w, beta)
    q = beta.denominator
    ks = list(range(1, ceil(c_w * q)))
    if seed is not None:
        random.Random(seed).shuffle(ks)
    den = bounds.denominator(ctx)
    nchunks = max(1, min(jobs, len(ks)))
    tasks = [
        _ProbeTask(ctx.degree, w, beta, tuple(ks[i::nchunks]), bounds.max_rank, bounds.max_c1_span, den,
                   None if seed is None else seed + i)
        for i in range(nchunks)
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_probe_slice, tasks))
    else:
        results = [_probe_slice(t) for t in tasks]
    cands, truncated = [], False
    for found, trunc in results:
        truncated |= trunc
        for u in found:
            cw = _accept(ctx, w, u, window, beta)
            if cw is not None:
                cands.append(cw)
    return cands, truncated


def _vertical_candidates(ctx: FanoContext, v: ChernCharacter, window: Window,
                         bounds: ScanBounds) -> tuple[list[CandidateWall], bool]:
    """Witnesses for the vertical wall ``beta = mu``.

    With ``w`` normalized to negative rank, the filters force
    ``rank(u)`` in ``[rank(w), 0]`` and ``e(u)`` in ``[0, e(w)]``.
    """
    mu = v.a1 / v.a0
    w = v if v.a0 < 0 else -v
    r_w, _, e_w = _coords(w, mu)
    den = bounds.denominator(ctx)
    truncated = False
    lo_r = int(r_w)
    if -lo_r > bounds.max_rank:
        truncated, lo_r = True, -bounds.max_rank
    out = []
    for a0 in range(lo_r, 1):
        a1 = mu * a0
        if a1.denominator != 1:
            continue
        if abs(a1) > bounds.max_c1_span:
            truncated = True
            continue
        shift = mu * a1 - mu * mu * a0 / 2
        for m in range(floor(shift * den), ceil((e_w + shift) * den) + 1):
            u = ChernCharacter(a0, a1, Fraction(m, den), 0)
            e = u.a2 - shift
            if 0 <= e <= e_w:
                cw = _accept(ctx, w, u, window, None)
                if cw is not None:
                    out.append(cw)
    return out, truncated


def scan_candidates(
    ctx: FanoContext,
    v: ChernCharacter,
    window: Window,
    bounds: ScanBounds | None = None,
    *,
    jobs: int = 1,
    seed: int | None = None,
    warn: bool = True,
) -> ScanResult:
    """All candidate walls of ``v`` meeting ``window``.

    ``seed`` shuffles the traversal order (the result does not depend on it);
    ``jobs > 1`` spreads each probe line over worker processes.
    """
    bounds = bounds or ScanBounds()
    v = ChernCharacter(v.a0, v.a1, v.a2, 0)
    reasons: list[str] = []
    probes: list[Fraction] = []
    cands: list[CandidateWall] = []
    lo, hi = window.beta_min, window.beta_max

    if v.a0 == 0 and v.a1 == 0:
        return ScanResult((), True, ("Im Z vanishes identically",))
    if _disc(v) <= 0:
        return ScanResult((), True, ("discriminant is not positive",))

    if v.a0 == 0:
        regions = [(lo, hi, 0)]
        reasons.append("rank-zero class: walls are concentric")
    else:
        mu = v.a1 / v.a0
        regions = [(lo, min(hi, mu), -1), (max(lo, mu), hi, 1)]
        if lo < mu < hi:
            vc, trunc = _vertical_candidates(ctx, v, window, bounds)
            cands += vc
            if trunc:
                reasons.append("vertical-wall search truncated by bounds")

    complete = True
    for rlo, rhi, side in regions:
        if rlo >= rhi:
            continue
        region_probes, why = _probes_for_region(v, rlo, rhi, side)
        if why is not None:
            complete = False
            reasons.append(why)
        for beta in region_probes:
            probes.append(beta)
            found, trunc = _scan_probe(ctx, v, beta, window, bounds, jobs, seed)
            cands += found
            if trunc:
                complete = False
                reasons.append(f"rank/c1 caps truncated the search at beta={beta}")
    if any("vertical-wall search truncated" in r for r in reasons):
        complete = False
    if not complete and warn:
        warnings.warn("; ".join(reasons), ScanIncompleteWarning, stacklevel=2)
    return ScanResult(_dedupe(cands), complete, tuple(reasons), tuple(probes))


# --------------------------------------------------------------------------
# strip emptiness and the largest wall


@dataclass(frozen=True)
class StripReport:
    """Evidence that no candidate wall meets a vertical strip."""

    v: ChernCharacter
    beta_left: Fraction
    beta_right: Fraction
    sign: int  # the heart representative is sign * v
    im_left: Fraction | None  # Im Z of sign*v at beta_left (d-scaled)
    minimal_im: Fraction | None  # smallest positive value Im Z takes at beta_left
    minimality_holds: bool
    limit_point_outside: bool
    scan: ScanResult
    not_applicable: str | None = None

    @property
    def scan_empty(self) -> bool:
        return len(self.scan) == 0 and self.scan.complete

    @property
    def ok(self) -> bool:
        return self.minimality_holds and self.limit_point_outside and self.scan_empty

    def to_json(self) -> dict:
        return {
            "class": self.v.to_json(),
            "beta_left": str(self.beta_left),
            "beta_right": str(self.beta_right),
            "sign": self.sign,
            "im_left": None if self.im_left is None else str(self.im_left),
            "minimal_im": None if self.minimal_im is None else str(self.minimal_im),
            "minimality_holds": self.minimality_holds,
            "limit_point_outside": self.limit_point_outside,
            "scan": self.scan.to_json(),
            "not_applicable": self.not_applicable,
            "ok": self.ok,
        }


def verify_strip_empty(
    ctx: FanoContext,
    v: ChernCharacter,
    interval: tuple[Rational, Rational],
    bounds: ScanBounds | None = None,
    *,
    strict: bool = False,
) -> StripReport:
    """Check that no candidate wall of ``v`` meets ``beta_left < beta < beta_right``.

    Two independent pieces of evidence: ``Im Z(v)`` at ``beta_left`` is the
    least positive value the lattice allows there (so nothing can
    destabilize along that line, and nested walls meeting the strip would
    have to cross it), and an exhaustive scan of the strip.  With
    ``strict=True`` a failed minimality precondition raises
    :class:`NotApplicableError` instead of being recorded in the report.
    """
    bl, br = as_fraction(interval[0]), as_fraction(interval[1])
    d = ctx.degree
    window = Window(bl, br)
    scan = scan_candidates(ctx, v, window, bounds, warn=False)
    sign = heart_sign(v, bl)
    _, c, _ = _coords(v, bl)
    im = d * sign * c
    minimal = Fraction(d, bl.denominator)
    reason = None
    if c == 0:
        reason = "Im Z vanishes at beta_left"
    elif im != minimal:
        reason = f"Im Z = {im} at beta_left exceeds the minimal positive value {minimal}"
    limit_ok = False
    if reason is None and v.a0 != 0:
        # walls left of mu nest around the left limit point; the strip must
        # sit between that point and mu for them all to cross beta_left
        mu, Q, absr = limit_points(v)
        if br <= mu:
            limit_ok = ((mu - bl) * absr) ** 2 <= Q
    elif reason is None:
        reason = "rank-zero class"
    if reason is not None and strict:
        raise NotApplicableError(reason)
    return StripReport(
        v, bl, br, sign,
        None if c == 0 else im,
        minimal,
        reason is None,
        limit_ok,
        scan,
        reason,
    )


def largest_wall(
    ctx: FanoContext,
    v: ChernCharacter,
    bounds: ScanBounds | None = None,
    *,
    side: str | None = None,
    depth: int = 12,
) -> tuple[CandidateWall | None, bool]:
    """The semicircular candidate wall of largest radius, and a completeness flag.

    Probe lines approach the limit point from the vertical-wall side; by
    nesting, the biggest wall crossing the first non-empty probe is the
    biggest of all.  ``side`` is ``"left"``, ``"right"`` or ``None`` (both).
    """
    bounds = bounds or ScanBounds()
    v = ChernCharacter(v.a0, v.a1, v.a2, 0)
    if _disc(v) <= 0 or (v.a0 == 0 and v.a1 == 0):
        return None, True
    if v.a0 == 0:
        sides = [0]
    else:
        sides = {"left": [-1], "right": [1], None: [-1, 1]}[side]
    best: CandidateWall | None = None
    complete = True
    for sd in sides:
        found, ok = _largest_on_side(ctx, v, bounds, sd, depth)
        complete &= ok
        if found is not None and (best is None or found.wall.radius_sq > best.wall.radius_sq):
            best = found
    return best, complete


def _largest_on_side(ctx, v, bounds, side, depth):
    if side == 0:
        gamma = v.a2 / v.a1
        # concentric walls: a probe at gamma + t meets exactly those of radius > t
        probes = [gamma + Fraction(2) ** (4 - k) for k in range(depth + 1)]
    else:
        mu = v.a1 / v.a0
        ell_lo, ell_hi = _limit_bracket(v, side, bits=20 + 2 * depth)
        span = mu - ell_hi if side < 0 else ell_lo - mu
        if side < 0:
            probes = [simplest_rational_in(ell_hi, ell_lo + span / 2 ** k) for k in range(1, depth + 1)]
        else:
            probes = [simplest_rational_in(ell_hi - span / 2 ** k, ell_lo) for k in range(1, depth + 1)]
    complete = True
    for probe in probes:
        window = Window(probe - 1, probe + 1)
        found, trunc = _scan_probe(ctx, v, probe, window, bounds, 1, None)
        complete &= not trunc
        semis = [c for c in found if isinstance(c.wall, SemicircleWall)]
        if semis:
            return _dedupe(semis)[0], complete
    return None, False
