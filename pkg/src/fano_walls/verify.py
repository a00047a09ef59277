"""Bundled acceptance checks, replayed by ``fano-walls verify``.

Every check is exact.  Randomized parts use fixed seeds.
"""
from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .kulattice import (
    K1,
    K2,
    KuClass,
    LatticeOperator,
    embed,
    euler_form_ku,
    kappa1,
    kappa2,
    left_mutation,
    minus_one_classes,
    rotation,
    rotation_orbit,
    serre_operator,
)
from .numclass import (
    UNIT,
    ChernCharacter,
    FanoContext,
    HilbertPolynomial,
    chi,
    class_from_hilbert,
    euler_pairing,
    line_bundle,
    point_class,
    tensor_line,
    twist,
)
from .specseq import (
    UNKNOWN,
    DifferentialSpec,
    PageTable,
    abutment_dim,
    abutment_upper_bounds,
    euler_characteristic,
    next_page,
    pin,
)
from .walls import (
    SemicircleWall,
    VerticalWall,
    Window,
    numerical_wall,
    scan_candidates,
    verify_strip_empty,
    wall_from_json,
)
from .weakstab import bms_ch3_bound, q_form

DEGREES = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "name": self.name, "passed": self.passed, "detail": self.detail}


def _ctx(d: int) -> FanoContext:
    return FanoContext(d)


def check_euler_matrix() -> list[CheckResult]:
    out = []
    for d in DEGREES:
        ctx = _ctx(d)
        basis = (kappa1(ctx), kappa2(ctx))
        got = [[euler_pairing(ctx, a, b) for b in basis] for a in basis]
        want = [[-1, -1], [1 - d, -d]]
        out.append(CheckResult(1, f"euler matrix d={d}", got == want, f"{_fmt(got)}"))
    return out


def check_sections() -> list[CheckResult]:
    ctx = _ctx(1)
    a, b = chi(ctx, line_bundle(1)), chi(ctx, line_bundle(2))
    return [CheckResult(2, "chi(O(1)) = 3, chi(O(2)) = 7 at d=1", (a, b) == (3, 7), f"{a}, {b}")]


def check_ideal_class() -> list[CheckResult]:
    out = []
    for d in DEGREES:
        ctx = _ctx(d)
        line = class_from_hilbert(ctx, HilbertPolynomial(1, 1), 1)
        got = UNIT - line
        out.append(CheckResult(3, f"1 - [O_line] = k1 at d={d}", got == kappa1(ctx), str(got)))
    return out


def check_chi_iz_op() -> list[CheckResult]:
    ctx = _ctx(1)
    val = euler_pairing(ctx, kappa1(ctx), point_class(ctx))
    return [CheckResult(4, "chi(I_Z, O_p) = 1 at d=1", val == 1, str(val))]


def check_walls() -> list[CheckResult]:
    ctx = _ctx(1)
    v = -kappa1(ctx)
    w1 = numerical_wall(ctx, v, line_bundle(-1))
    w2 = numerical_wall(ctx, v, UNIT)
    ok1 = w1 == SemicircleWall(Fraction(-3, 2), Fraction(1, 4))
    ok2 = w2 == VerticalWall(Fraction(0))
    return [
        CheckResult(5, "wall(-k1, O(-1)) semicircle c=-3/2 r^2=1/4", ok1, repr(w1.to_json())),
        CheckResult(5, "wall(-k1, O) vertical beta=0", ok2, repr(w2.to_json())),
    ]


def check_strip() -> list[CheckResult]:
    ctx = _ctx(1)
    v = -kappa1(ctx)
    scan = scan_candidates(ctx, v, Window(-1, 0, 4), warn=False)
    rep = verify_strip_empty(ctx, v, (-1, 0))
    return [
        CheckResult(6, "scan(-k1, beta in (-1,0)) empty and certified",
                    len(scan) == 0 and scan.complete, f"{len(scan)} walls, complete={scan.complete}"),
        CheckResult(6, "strip report with Im = 1 at beta = -1",
                    rep.ok and rep.im_left == 1 and rep.minimal_im == 1,
                    f"ok={rep.ok} im={rep.im_left} minimal={rep.minimal_im}"),
    ]


def check_bms() -> list[CheckResult]:
    ctx = _ctx(1)
    E = ChernCharacter(1, 0, -1, 0)
    b1 = bms_ch3_bound(ctx, E, 0, Fraction(-1, 2))
    b2 = bms_ch3_bound(ctx, E, 0, -1)
    return [
        CheckResult(7, "a3 <= 3/2 at beta = -1/2", b1 == Fraction(3, 2), str(b1)),
        CheckResult(7, "a3 <= 1 at beta = -1", b2 == 1, str(b2)),
    ]


def check_rotation() -> list[CheckResult]:
    out = []
    target = LatticeOperator(((0, -1), (1, 1)))
    for d in DEGREES:
        R = rotation(_ctx(d))
        out.append(CheckResult(8, f"R = [[0,-1],[1,1]] at d={d}", R == target, _fmt(R.as_lists())))
    R1 = rotation(_ctx(1))
    out.append(CheckResult(8, "R(k2) = k2 - k1 and R(k2 - k1) = -k1 at d=1",
                           R1(K2) == K2 - K1 and R1(K2 - K1) == -K1, f"{R1(K2)}, {R1(K2 - K1)}"))
    for d in DEGREES:
        ctx = _ctx(d)
        i_p = UNIT - point_class(ctx)
        m_p = left_mutation(ctx, UNIT, tensor_line(i_p, 1))
        want = kappa2(ctx) - d * kappa1(ctx)
        out.append(CheckResult(8, f"[M_p] = k2 - d*k1 at d={d}", m_p == want, str(m_p)))
    return out


def check_orbit() -> list[CheckResult]:
    orbit = rotation_orbit(1, K1)
    six = {K1, -K1, K2, -K2, K1 - K2, K2 - K1}
    minus = set(minus_one_classes(1, 50))
    return [
        CheckResult(9, "orbit of k1 has period 6 and is the (-1)-classes",
                    orbit.period == 6 and set(orbit.classes) == six, " ".join(map(str, orbit.classes))),
        CheckResult(9, "(-1)-classes in box 50 at d=1", minus == six, f"{len(minus)} classes"),
    ]


def check_serre() -> list[CheckResult]:
    S = serre_operator(1)
    R = rotation(_ctx(1))
    rng = random.Random(20240610)
    ok = True
    for _ in range(100):
        a = KuClass(rng.randint(-20, 20), rng.randint(-20, 20))
        b = KuClass(rng.randint(-20, 20), rng.randint(-20, 20))
        ok &= euler_form_ku(1, a, b) == euler_form_ku(1, b, S(a))
    return [
        CheckResult(10, "S^-1 = -R^2 at d=1", S.inverse() == -(R ** 2), _fmt(S.inverse().as_lists())),
        CheckResult(10, "chi(a,b) = chi(b,Sa) on 100 pairs", ok, "seeded"),
    ]


def iz_pipeline() -> tuple[PageTable, PageTable]:
    first = PageTable.from_rows([[2, 1, 0], [1, 3, 0], [0, "2+3", 1], [0, "1+1", 2]], p_min=-1)
    ranks = DifferentialSpec({(-1, 3): UNKNOWN, (-1, 2): 1, (0, 1): 1, (0, 0): 1})
    return first, next_page(first, ranks)


def gx_pipeline() -> tuple[PageTable, PageTable]:
    first = PageTable.from_rows([[0, 0, 0], [1, "*", 0], [0, "0+2", 0], [0, "1+1", 1]], p_min=-1)
    return first, next_page(first, DifferentialSpec({(0, 0): 1}))


def check_specseq() -> list[CheckResult]:
    ctx = _ctx(1)
    i1, i2 = iz_pipeline()
    g1, g2 = gx_pipeline()
    ext_iz = abutment_dim(i2, 1)
    # ext^1 of G_x: page-two bound, matched by a 3-dimensional family
    ext_gx = pin(abutment_upper_bounds(g2).get(1), 3)
    chi_k1 = euler_pairing(ctx, kappa1(ctx), kappa1(ctx))
    return [
        CheckResult(11, "second page of the I_Z sequence",
                    i2.rows((-1, 1), (0, 3)) == [["*", "*", "0"], ["0", "2", "0"], ["0", "4", "0"], ["0", "1", "1"]],
                    json.dumps(i2.rows((-1, 1), (0, 3)))),
        CheckResult(11, "ext^1(I_Z, I_Z) = 5", ext_iz == 5, str(ext_iz)),
        CheckResult(11, "ext^1(G_x, G_x) = 3", ext_gx == 3, str(ext_gx)),
        CheckResult(11, "alternating sums conserved",
                    euler_characteristic(i1) == euler_characteristic(i2)
                    and euler_characteristic(g1) == euler_characteristic(g2),
                    f"{euler_characteristic(i1)} / {euler_characteristic(g1)}"),
        CheckResult(11, "I_Z alternating sum equals chi(k1, k1)",
                    euler_characteristic(i2) == int(chi_k1), f"{euler_characteristic(i2)} vs {chi_k1}"),
    ]


def check_properties() -> list[CheckResult]:
    rng = random.Random(7)

    def rat(lim: int = 6, den: int = 6) -> Fraction:
        return Fraction(rng.randint(-lim * den, lim * den), rng.randint(1, den))

    def cls() -> ChernCharacter:
        return ChernCharacter(rat(), rat(), rat(), rat())

    twist_ok = all(
        twist(twist(E, a), b) == twist(E, a + b) and twist(E, 0) == E
        for E, a, b in ((cls(), rat(), rat()) for _ in range(200))
    )
    q_ok = all(
        q_form(ctx, E, b) == q_form(ctx, E)
        for ctx, E, b in ((_ctx(rng.choice(DEGREES)), cls(), rat()) for _ in range(200))
    )
    cross_ok = True
    for d in DEGREES:
        ctx = _ctx(d)
        for _ in range(200):
            a = KuClass(rng.randint(-9, 9), rng.randint(-9, 9))
            b = KuClass(rng.randint(-9, 9), rng.randint(-9, 9))
            cross_ok &= euler_pairing(ctx, embed(ctx, a), embed(ctx, b)) == euler_form_ku(d, a, b)

    nest_ok, order_ok, json_ok = True, True, True
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for d, v, win in _scan_cases():
            ctx = _ctx(d)
            base = scan_candidates(ctx, v, win)
            shuffled = scan_candidates(ctx, v, win, seed=rng.randint(0, 10 ** 6))
            order_ok &= set(base.loci()) == set(shuffled.loci())
            semis = [w for w in base.loci() if isinstance(w, SemicircleWall)]
            for i, a in enumerate(semis):
                for b in semis[i + 1:]:
                    nest_ok &= not _transversal(a, b)
            for c in base:
                json_ok &= wall_from_json(json.loads(json.dumps(c.wall.to_json()))) == c.wall
    for _ in range(50):
        E = cls()
        json_ok &= ChernCharacter.from_json(json.loads(json.dumps(E.to_json()))) == E
    return [
        CheckResult(12, "twist group law", twist_ok, "200 samples"),
        CheckResult(12, "Q independent of beta", q_ok, "200 samples"),
        CheckResult(12, "walls nest without transversal crossings", nest_ok, f"{len(_scan_cases())} scans"),
        CheckResult(12, "scan independent of traversal order", order_ok, "seeded shuffles"),
        CheckResult(12, "JSON round-trips", json_ok, "classes and walls"),
        CheckResult(12, "embedded Euler pairing = lattice form", cross_ok, "200 pairs per degree"),
    ]


def _scan_cases():
    return [
        (1, ChernCharacter(-1, 0, 1), Window(-2, 0)),
        (1, ChernCharacter(-2, 0, 2), Window(-3, 0)),
        (1, ChernCharacter(1, 0, -2), Window(-3, 3)),
        (2, ChernCharacter(2, 1, -1), Window(-3, 2)),
        (3, ChernCharacter(-1, 1, Fraction(2, 3)), Window(-1, 4, 3)),
    ]


def _transversal(a: SemicircleWall, b: SemicircleWall) -> bool:
    """Whether two semicircles cross at a point with ``alpha > 0``."""
    if a.center == b.center:
        return False
    # radical line beta0 where both circles meet the same height
    beta0 = (a.radius_sq - b.radius_sq + b.center ** 2 - a.center ** 2) / (2 * (b.center - a.center))
    return a.s_at(beta0) > 0


CHECKS: tuple[Callable[[], list[CheckResult]], ...] = (
    check_euler_matrix,
    check_sections,
    check_ideal_class,
    check_chi_iz_op,
    check_walls,
    check_strip,
    check_bms,
    check_rotation,
    check_orbit,
    check_serre,
    check_specseq,
    check_properties,
)


def run_all() -> list[CheckResult]:
    results: list[CheckResult] = []
    for check in CHECKS:
        results.extend(check())
    return results


def _fmt(m) -> str:
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in m) + "]"
