"""Deterministic SVG pictures of wall configurations in the (beta, alpha) half-plane."""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from xml.sax.saxutils import escape

from .walls import CandidateWall, SemicircleWall, VerticalWall, Window

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


@dataclass(frozen=True)
class Style:
    width: int = 640
    height: int = 360
    margin: int = 40
    legend_width: int = 220
    stroke_width: float = 1.5
    title: str | None = None


def _num(x: float) -> str:
    return format(x, ".12g")


def _label(wall) -> str:
    dest = wall.destabilizer
    if isinstance(wall, VerticalWall):
        locus = f"beta = {wall.beta0}"
    else:
        locus = f"center {wall.center}, radius^2 {wall.radius_sq}"
    return locus if dest is None else f"{locus}  [{dest}]"


def render_walls(walls, window: Window, style: Style | None = None) -> str:
    """SVG document showing ``walls`` clipped to ``window``.

    ``walls`` may hold wall loci or :class:`CandidateWall` entries; loci that
    compare equal are drawn once, the first occurrence supplying the label.
    """
    st = style or Style()
    seen: dict = {}
    for w in walls:
        locus = w.wall if isinstance(w, CandidateWall) else w
        if isinstance(locus, (VerticalWall, SemicircleWall)) and locus not in seen:
            seen[locus] = locus
    loci = list(seen.values())

    b0, b1 = float(window.beta_min), float(window.beta_max)
    if window.s_max is not None:
        a1 = sqrt(float(window.s_max))
    else:
        a1 = (b1 - b0) / 2
    pw = st.width - 2 * st.margin
    ph = st.height - 2 * st.margin
    sx = pw / (b1 - b0)
    sy = ph / a1

    def px(beta: float) -> float:
        return st.margin + (beta - b0) * sx

    def py(alpha: float) -> float:
        return st.margin + ph - alpha * sy

    total_w = st.width + st.legend_width
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{st.height}" '
        f'viewBox="0 0 {total_w} {st.height}">',
    ]
    if st.title:
        out.append(f"<title>{escape(st.title)}</title>")
    out.append('<defs><clipPath id="plot"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath></defs>'.format(
        _num(st.margin), _num(st.margin), _num(pw), _num(ph)))
    # axes
    out.append(f'<rect x="{_num(st.margin)}" y="{_num(st.margin)}" width="{_num(pw)}" height="{_num(ph)}" '
               'fill="none" stroke="#000000" stroke-width="1"/>')
    out.append(f'<text x="{_num(st.margin + pw / 2)}" y="{_num(st.height - 8)}" font-size="12" '
               'text-anchor="middle">beta</text>')
    out.append(f'<text x="12" y="{_num(st.margin + ph / 2)}" font-size="12" text-anchor="middle">alpha</text>')
    out.append(f'<text x="{_num(st.margin)}" y="{_num(st.margin + ph + 14)}" font-size="10" '
               f'text-anchor="middle">{escape(str(window.beta_min))}</text>')
    out.append(f'<text x="{_num(st.margin + pw)}" y="{_num(st.margin + ph + 14)}" font-size="10" '
               f'text-anchor="middle">{escape(str(window.beta_max))}</text>')

    out.append('<g clip-path="url(#plot)" fill="none">')
    for i, w in enumerate(loci):
        color = _PALETTE[i % len(_PALETTE)]
        if isinstance(w, VerticalWall):
            x = _num(px(float(w.beta0)))
            out.append(f'<line x1="{x}" y1="{_num(py(0))}" x2="{x}" y2="{_num(py(a1))}" stroke="{color}" '
                       f'stroke-width="{_num(st.stroke_width)}" stroke-dasharray="6,4"/>')
        else:
            r = sqrt(float(w.radius_sq))
            c = float(w.center)
            out.append(
                f'<path d="M {_num(px(c - r))} {_num(py(0))} A {_num(r * sx)} {_num(r * sy)} 0 0 1 '
                f'{_num(px(c + r))} {_num(py(0))}" stroke="{color}" stroke-width="{_num(st.stroke_width)}"/>'
            )
    out.append("</g>")

    lx = st.width + 8
    for i, w in enumerate(loci):
        color = _PALETTE[i % len(_PALETTE)]
        y = st.margin + 16 * i
        dash = ' stroke-dasharray="6,4"' if isinstance(w, VerticalWall) else ""
        out.append(f'<line x1="{_num(lx)}" y1="{_num(y)}" x2="{_num(lx + 18)}" y2="{_num(y)}" '
                   f'stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{_num(lx + 24)}" y="{_num(y + 4)}" font-size="9">{escape(_label(w))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
