"""Dimension bookkeeping for first-quadrant-style spectral sequences.

Pages are sparse tables ``(p, q) -> dim``; the page-``r`` differential goes
``(p, q) -> (p + r, q - r + 1)``, so page one has arrows pointing right along
rows.  Differentials are given by rank only.

Dimensions are affine expressions in named unknowns.  An entry entered as
``"*"`` becomes a fresh unknown, and so does a differential of unknown rank;
an Euler characteristic may still come out as a plain integer when the
unknowns cancel, while any ext count that depends on one is refused.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

Key = tuple[int, int]


class InfeasibleRankError(ValueError):
    """A differential rank that would make some dimension negative."""


class UnknownDimensionError(ValueError):
    """A quantity depends on a dimension that was never pinned down."""


class UnknownRank:
    """Marker for a differential whose rank is not known."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNKNOWN"


UNKNOWN = UnknownRank()


@dataclass(frozen=True)
class Dim:
    """``const + sum(coef * symbol)``."""

    const: int = 0
    terms: tuple[tuple[str, int], ...] = ()

    @classmethod
    def symbol(cls, name: str) -> "Dim":
        return cls(0, ((name, 1),))

    @classmethod
    def of(cls, x: "Dim | int") -> "Dim":
        return x if isinstance(x, Dim) else cls(int(x))

    @staticmethod
    def _norm(const: int, coeffs: Mapping[str, int]) -> "Dim":
        return Dim(const, tuple(sorted((k, c) for k, c in coeffs.items() if c)))

    def __add__(self, other: "Dim | int") -> "Dim":
        o = Dim.of(other)
        coeffs = dict(self.terms)
        for k, c in o.terms:
            coeffs[k] = coeffs.get(k, 0) + c
        return Dim._norm(self.const + o.const, coeffs)

    __radd__ = __add__

    def __neg__(self) -> "Dim":
        return Dim(-self.const, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "Dim | int") -> "Dim":
        return self + (-Dim.of(other))

    def __rsub__(self, other: int) -> "Dim":
        return Dim.of(other) - self

    def __mul__(self, k: int) -> "Dim":
        return Dim._norm(self.const * k, {s: c * k for s, c in self.terms})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return not self.terms and self.const == other
        if isinstance(other, Dim):
            return (self.const, self.terms) == (other.const, other.terms)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.const, self.terms))

    @property
    def is_known(self) -> bool:
        return not self.terms

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.terms)

    def value(self) -> int:
        if self.terms:
            raise UnknownDimensionError(f"{self} depends on unknowns {', '.join(self.symbols)}")
        return self.const

    def substitute(self, values: Mapping[str, int]) -> "Dim":
        out = Dim(self.const)
        for k, c in self.terms:
            out = out + (c * values[k] if k in values else Dim(0, ((k, c),)))
        return out

    def bounds(self, symbols: Mapping[str, tuple[int, int | None]]) -> tuple[int | None, int | None]:
        """Interval bounds; ``None`` stands for an infinite end."""
        lo: int | None = self.const
        hi: int | None = self.const
        for k, c in self.terms:
            s_lo, s_hi = symbols.get(k, (0, None))
            a, b = (c * s_lo, None if s_hi is None else c * s_hi)
            if c < 0:
                a, b = b, a
            lo = None if lo is None or a is None else lo + a
            hi = None if hi is None or b is None else hi + b
        return lo, hi

    def __str__(self) -> str:
        parts = [str(self.const)] if self.const or not self.terms else []
        for k, c in self.terms:
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign}{mag}{k}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    @classmethod
    def parse(cls, text: str) -> "Dim":
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty dimension expression")
        out = Dim(0)
        pos = 0
        for m in _TERM.finditer(text):
            if m.start() != pos or not m.group(0):
                break
            sign = -1 if m.group(1) == "-" else 1
            coef = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                out = out + Dim(0, ((m.group(3), sign * coef),))
            elif m.group(2):
                out = out + sign * coef
            else:
                break
            pos = m.end()
        if pos != len(text):
            raise ValueError(f"cannot parse dimension {text!r} at position {pos}")
        return out


_TERM = re.compile(r"([+-]?)(\d+)?\*?([a-z]\w*\[-?\d+,-?\d+\])?")


def _star_name(p: int, q: int) -> str:
    return f"x[{p},{q}]"


def _rank_name(r: int, p: int, q: int) -> str:
    return f"d{r}[{p},{q}]"


@dataclass(frozen=True)
class PageTable:
    """Page ``page`` of a spectral sequence: ``(p, q) -> Dim``.

    ``symbols`` bounds every unknown appearing in the entries; ``labels``
    carries free-form provenance such as a split ``"2+3"``.
    """

    page: int
    entries: Mapping[Key, Dim]
    symbols: Mapping[str, tuple[int, int | None]] = field(default_factory=dict)
    labels: Mapping[Key, str] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (p, q), v in self.entries.items():
            v = Dim.of(v)
            if v != 0:
                clean[(int(p), int(q))] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))
        object.__setattr__(self, "symbols", dict(sorted(self.symbols.items())))
        object.__setattr__(self, "labels", dict(self.labels))
        for k, v in self.entries.items():
            lo, _ = v.bounds(self.symbols)
            if lo is None or lo < 0:
                raise InfeasibleRankError(f"entry {k} = {v} may be negative")

    def __getitem__(self, key: Key) -> Dim:
        return self.entries.get(key, Dim(0))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], p_min: int = 0, page: int = 1) -> "PageTable":
        """Build from rows printed top to bottom (highest ``q`` first).

        Entries are integers, ``"*"`` for unknown, or strings such as
        ``"2+3"`` whose sum is stored and whose text is kept as a label.
        """
        rows = [list(r) for r in rows]
        entries: dict[Key, Dim] = {}
        symbols: dict[str, tuple[int, int | None]] = {}
        labels: dict[Key, str] = {}
        for i, row in enumerate(rows):
            q = len(rows) - 1 - i
            for j, val in enumerate(row):
                p = p_min + j
                if val == "*":
                    name = _star_name(p, q)
                    entries[(p, q)] = Dim.symbol(name)
                    symbols[name] = (0, None)
                elif isinstance(val, str):
                    entries[(p, q)] = Dim(sum(int(x) for x in val.split("+")))
                    labels[(p, q)] = val
                else:
                    entries[(p, q)] = Dim.of(val)
        return cls(page, entries, symbols, labels)

    def rows(self, p_range: tuple[int, int], q_range: tuple[int, int]) -> list[list[str]]:
        """Entries as strings, highest ``q`` first, ``*`` for unknowns."""
        out = []
        for q in range(q_range[1], q_range[0] - 1, -1):
            out.append([
                str(self[(p, q)]) if self[(p, q)].is_known else "*"
                for p in range(p_range[0], p_range[1] + 1)
            ])
        return out

    def to_json(self) -> dict:
        def enc(v: Dim):
            return v.const if v.is_known else str(v)

        out = {"page": self.page, "entries": [[p, q, enc(v)] for (p, q), v in self.entries.items()]}
        if self.symbols:
            out["symbols"] = {k: [lo, hi] for k, (lo, hi) in self.symbols.items()}
        if self.labels:
            out["labels"] = [[p, q, s] for (p, q), s in sorted(self.labels.items())]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "PageTable":
        entries: dict[Key, Dim] = {}
        symbols = {k: (v[0], v[1]) for k, v in obj.get("symbols", {}).items()}
        for p, q, v in obj["entries"]:
            if v == "*":
                name = _star_name(p, q)
                entries[(p, q)] = Dim.symbol(name)
                symbols.setdefault(name, (0, None))
            elif isinstance(v, str):
                entries[(p, q)] = Dim.parse(v)
            else:
                entries[(p, q)] = Dim(int(v))
        labels = {(p, q): s for p, q, s in obj.get("labels", [])}
        return cls(int(obj["page"]), entries, symbols, labels)


@dataclass(frozen=True)
class DifferentialSpec:
    """Ranks of the page differential out of each ``(p, q)``; ``UNKNOWN`` allowed."""

    ranks: Mapping[Key, "int | UnknownRank"]

    def __post_init__(self):
        for k, r in self.ranks.items():
            if r is not UNKNOWN and (not isinstance(r, int) or r < 0):
                raise ValueError(f"rank at {k} must be a nonnegative integer or UNKNOWN, got {r!r}")


def target(page: int, key: Key) -> Key:
    p, q = key
    return (p + page, q - page + 1)


def next_page(t: PageTable, d: DifferentialSpec) -> PageTable:
    """Cohomology of ``t`` under a differential with the given ranks."""
    entries = dict(t.entries)
    symbols = dict(t.symbols)
    for src, rank in sorted(d.ranks.items()):
        tgt = target(t.page, src)
        s_dim, t_dim = t[src], t[tgt]
        if rank is UNKNOWN:
            cap = [b for b in (s_dim.bounds(t.symbols)[1], t_dim.bounds(t.symbols)[1]) if b is not None]
            name = _rank_name(t.page, *src)
            symbols[name] = (0, min(cap) if cap else None)
            amount = Dim.symbol(name)
        else:
            if rank == 0:
                continue
            for k, dim in ((src, s_dim), (tgt, t_dim)):
                hi = dim.bounds(t.symbols)[1]
                if hi is not None and rank > hi:
                    raise InfeasibleRankError(f"rank {rank} at {src} exceeds dim {dim} at {k}")
            amount = Dim(rank)
        entries[src] = entries.get(src, Dim(0)) - amount
        entries[tgt] = entries.get(tgt, Dim(0)) - amount
    for k, v in entries.items():
        lo, _ = v.bounds(symbols)
        if lo is None or lo < 0:
            raise InfeasibleRankError(f"entry {k} would become {v}, which may be negative")
    return PageTable(t.page + 1, entries, symbols)


def abutment_dims(t: PageTable) -> dict[int, int]:
    """``H^n = sum_{p+q=n} E^{p,q}``, assuming the sequence has degenerated at ``t``.

    Raises :class:`UnknownDimensionError` if a needed entry is not known.
    """
    out: dict[int, Dim] = {}
    for (p, q), v in t.entries.items():
        out[p + q] = out.get(p + q, Dim(0)) + v
    return {n: v.value() for n, v in sorted(out.items())}


def abutment_dim(t: PageTable, n: int) -> int:
    """``H^n`` alone, assuming degeneration; entries of other total degrees may be unknown."""
    total = Dim(0)
    for (p, q), v in t.entries.items():
        if p + q == n:
            total = total + v
    return total.value()


def abutment_upper_bounds(t: PageTable) -> dict[int, int | None]:
    """Upper bounds on ``H^n`` valid without any degeneration assumption.

    Later pages are subquotients, so ``E_infinity <= E_r`` entrywise.
    """
    out: dict[int, Dim] = {}
    for (p, q), v in t.entries.items():
        out[p + q] = out.get(p + q, Dim(0)) + v
    return {n: v.bounds(t.symbols)[1] for n, v in sorted(out.items())}


def pin(upper: int | None, lower: int) -> int:
    """The value forced by matching bounds ``lower <= x <= upper``."""
    if upper is None:
        raise UnknownDimensionError("no upper bound")
    if lower > upper:
        raise InfeasibleRankError(f"lower bound {lower} exceeds upper bound {upper}")
    if lower != upper:
        raise UnknownDimensionError(f"bounds {lower} <= x <= {upper} do not pin a value")
    return upper


def euler_characteristic(t: PageTable) -> Dim:
    """``sum (-1)^(p+q) dim E^{p,q}`` as an expression in the unknowns."""
    total = Dim(0)
    for (p, q), v in t.entries.items():
        total = total + (v if (p + q) % 2 == 0 else -v)
    return total


def euler_check(t: PageTable) -> int:
    """Integer alternating sum; raises if it depends on an unknown."""
    return euler_characteristic(t).value()
