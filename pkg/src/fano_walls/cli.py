"""``fano-walls`` command line."""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from typing import Callable

from .classexpr import ClassExpressionError, parse_class, parse_rational
from .kulattice import (
    BasisResolutionError,
    NonExceptionalError,
    euler_matrix,
    euler_matrix_from_classes,
    minus_one_classes,
    resolve,
    rotation_orbit,
)
from .numclass import (
    FanoContext,
    IntegralityWarning,
    InconsistentDimensionError,
    check_integrality,
    chi,
    euler_pairing,
    hilbert_polynomial,
)
from .render import Style, render_walls
from .specseq import InfeasibleRankError, UnknownDimensionError
from .verify import run_all
from .walls import (
    EVERYWHERE,
    NOWHERE,
    NotApplicableError,
    ScanBounds,
    ScanIncompleteWarning,
    Window,
    numerical_wall,
    scan_candidates,
)

DOMAIN_ERRORS = (
    ClassExpressionError,
    BasisResolutionError,
    NonExceptionalError,
    InconsistentDimensionError,
    InfeasibleRankError,
    UnknownDimensionError,
    NotApplicableError,
)


class CliError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _ctx(args) -> FanoContext:
    return FanoContext(args.degree)


def _cls(args, attr: str = "cls"):
    text = getattr(args, attr)
    if text is None:
        flag = "--class" if attr == "cls" else "--vs"
        raise CliError(f"{flag} is required")
    E = parse_class(text, _ctx(args))
    check_integrality(E)
    return E


def _window(args) -> Window:
    return Window(args.beta_min, args.beta_max, args.alpha2_max)


def _bounds(args) -> ScanBounds:
    return ScanBounds(args.max_rank, args.max_c1_span, args.ch2_denom)


# each command returns (json-able payload, text rendering)


def cmd_chi(args):
    ctx = _ctx(args)
    E = _cls(args)
    if args.vs is None:
        val = chi(ctx, E)
        return {"class": E.to_json(), "chi": str(val)}, f"chi({E}) = {val}"
    F = _cls(args, "vs")
    val = euler_pairing(ctx, E, F)
    return {"class": E.to_json(), "vs": F.to_json(), "chi": str(val)}, f"chi({E}, {F}) = {val}"


def cmd_euler_matrix(args):
    M = euler_matrix_from_classes(_ctx(args)) if args.from_classes else euler_matrix(args.degree)
    rows = M.as_lists()
    return {"degree": args.degree, "matrix": rows}, json.dumps(rows)


def cmd_hilbert(args):
    P = hilbert_polynomial(_ctx(args), _cls(args))
    return {"polynomial": P.to_json(), "text": str(P)}, str(P)


def cmd_wall(args):
    ctx = _ctx(args)
    v, u = _cls(args), _cls(args, "vs")
    w = numerical_wall(ctx, v, u)
    if w is EVERYWHERE or w is NOWHERE:
        text = repr(w).lower()
    elif w.kind == "vertical":
        text = f"vertical wall beta = {w.beta0}"
    else:
        text = f"semicircle center {w.center} radius_sq {w.radius_sq}"
    return w.to_json(), text


def _scan(args):
    ctx = _ctx(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ScanIncompleteWarning)
        return scan_candidates(ctx, _cls(args), _window(args), _bounds(args), jobs=args.jobs, seed=args.seed)


def cmd_scan(args):
    res = _scan(args)
    lines = []
    for c in res:
        w = c.wall
        locus = f"beta = {w.beta0}" if w.kind == "vertical" else f"center {w.center} radius_sq {w.radius_sq}"
        lines.append(f"{w.kind:<10} {locus}  via {c.destabilizer}")
    lines.append(f"complete: {'yes' if res.complete else 'no'}")
    lines.extend(f"  note: {r}" for r in res.reasons)
    return res.to_json(), "\n".join(lines)


def cmd_render(args):
    # scan a slightly larger window so walls on the frame (a vertical wall
    # at an edge, say) are drawn; the picture is clipped to the window
    win = _window(args)
    pad = (win.beta_max - win.beta_min) / 64
    args.beta_min, args.beta_max = win.beta_min - pad, win.beta_max + pad
    res = _scan(args)
    svg = render_walls(res, win, Style(title=args.title))
    return None, svg


def cmd_orbit(args):
    ctx = _ctx(args)
    start = resolve(ctx, _cls(args))
    orbit = rotation_orbit(args.degree, start, args.max_steps)
    payload = {"start": start.to_json(), "orbit": [k.to_json() for k in orbit], "period": orbit.period}
    text = " -> ".join(map(str, orbit)) + f"  (period {orbit.period if orbit.period else 'not reached'})"
    return payload, text


def cmd_minus_one(args):
    classes = minus_one_classes(args.degree, args.box)
    return {"degree": args.degree, "box": args.box, "classes": [k.to_json() for k in classes]}, \
        "\n".join(map(str, classes))


def cmd_verify(args):
    results = run_all()
    width = max(len(r.name) for r in results)
    lines = [f"{r.criterion:>3}  {'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}" for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    payload = {"results": [r.to_json() for r in results], "failed": failed}
    return payload, "\n".join(lines)


COMMANDS: dict[str, Callable] = {
    "chi": cmd_chi,
    "euler-matrix": cmd_euler_matrix,
    "hilbert": cmd_hilbert,
    "wall": cmd_wall,
    "scan": cmd_scan,
    "orbit": cmd_orbit,
    "minus-one": cmd_minus_one,
    "render": cmd_render,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fano-walls", description="Exact tilt-wall and lattice computations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, degree=True, cls=False, vs=False):
        if degree:
            p.add_argument("--degree", "-d", type=int, required=True, choices=range(1, 6), metavar="D")
        if cls:
            p.add_argument("--class", dest="cls", required=cls == "required")
        if vs:
            p.add_argument("--vs", required=vs == "required")
        p.add_argument("--format", choices=("text", "json", "svg"), default=None)
        p.add_argument("--output", "-o")

    def scanning(p):
        p.add_argument("--beta-min", type=_rational, required=True)
        p.add_argument("--beta-max", type=_rational, required=True)
        p.add_argument("--alpha2-max", type=_rational, default=None)
        p.add_argument("--max-rank", type=int, default=ScanBounds.max_rank)
        p.add_argument("--max-c1-span", type=int, default=ScanBounds.max_c1_span)
        p.add_argument("--ch2-denom", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=None)

    common(sub.add_parser("chi", help="Euler characteristic or pairing"), cls="required", vs=True)
    p = sub.add_parser("euler-matrix", help="Gram matrix of the Euler form on k1, k2")
    common(p)
    p.add_argument("--from-classes", action="store_true", help="recompute by Riemann-Roch")
    common(sub.add_parser("hilbert", help="Hilbert polynomial"), cls="required")
    common(sub.add_parser("wall", help="numerical wall of two classes"), cls="required", vs="required")
    p = sub.add_parser("scan", help="candidate walls in a window")
    common(p, cls="required")
    scanning(p)
    p = sub.add_parser("render", help="SVG of the candidate walls in a window")
    common(p, cls="required")
    scanning(p)
    p.add_argument("--title", default=None)
    p = sub.add_parser("orbit", help="orbit of a lattice class under the rotation")
    common(p, cls="required")
    p.add_argument("--max-steps", type=int, default=64)
    p = sub.add_parser("minus-one", help="classes with chi(v, v) = -1")
    common(p)
    p.add_argument("--box", type=int, default=10)
    common(sub.add_parser("verify", help="replay the bundled acceptance checks"), degree=False)
    return ap


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _glue_values(argv: list[str]) -> list[str]:
    """Let ``--class -k1`` through: argparse would read ``-k1`` as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--class", "--vs", "--beta-min", "--beta-max", "--alpha2-max") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_glue_values(argv))
    fmt = args.format or ("svg" if args.command == "render" else "text")
    if fmt == "svg" and args.command != "render":
        print("fano-walls: error: --format svg is only available for render", file=sys.stderr)
        return 2
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", IntegralityWarning)
            payload, text = COMMANDS[args.command](args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except CliError as e:
        print(f"fano-walls: error: {e}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as e:
        print(f"fano-walls: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"fano-walls: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    if args.command == "render":
        if fmt != "svg":
            print("fano-walls: error: render only produces svg", file=sys.stderr)
            return 2
        out = text
    elif fmt == "json":
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = text + "\n"
    _emit(out, args.output)
    if args.command == "verify":
        return 1 if payload["failed"] else 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
