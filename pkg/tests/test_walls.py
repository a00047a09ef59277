import json
import random
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracle
from fano_walls.kulattice import kappa1
from fano_walls.numclass import UNIT, ChernCharacter as C, FanoContext, line_bundle
from fano_walls.render import Style, render_walls
from fano_walls.walls import (
    EVERYWHERE,
    NOWHERE,
    CandidateWall,
    NotApplicableError,
    ScanBounds,
    ScanIncompleteWarning,
    ScanResult,
    SemicircleWall,
    VerticalWall,
    Window,
    heart_sign,
    largest_wall,
    numerical_wall,
    scan_candidates,
    slope_identity,
    verify_strip_empty,
    wall_from_json,
    window_point,
)
from fano_walls.weakstab import TiltPoint, q_form, z_tilt
from strategies import contexts, lattice_truncations, rationals

D1 = FanoContext(1)
V = -kappa1(D1)  # (-1, 0, 1, 0)
O_MINUS_1 = SemicircleWall(F(-3, 2), F(1, 4))


def _quiet_scan(*args, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ScanIncompleteWarning)
        return scan_candidates(*args, **kw)


def _as_oracle_locus(wall):
    if isinstance(wall, VerticalWall):
        return ("vertical", wall.beta0)
    return ("semicircle", wall.center, wall.radius_sq)


def _sample_betas(wall):
    x0 = min(F(1, 2), wall.radius_sq / 2)
    return [wall.center - x0, wall.center, wall.center + x0]


class TestWallTypes:
    def test_degenerate_semicircle(self):
        with pytest.raises(ValueError):
            SemicircleWall(0, 0)
        with pytest.raises(ValueError):
            SemicircleWall(0, -1)

    def test_identity_ignores_provenance(self):
        assert SemicircleWall(1, 2, UNIT) == SemicircleWall(1, 2, None)
        assert hash(VerticalWall(0, UNIT)) == hash(VerticalWall(0))
        assert SemicircleWall(1, 2) != SemicircleWall(1, 3)

    def test_json(self):
        for w in (SemicircleWall(F(-3, 2), F(1, 4), C(0, 1, F(-3, 2))), VerticalWall(F(1, 3))):
            back = wall_from_json(json.loads(json.dumps(w.to_json())))
            assert back == w and back.destabilizer == w.destabilizer
        assert wall_from_json({"type": "everywhere"}) is EVERYWHERE
        assert wall_from_json(NOWHERE.to_json()) is NOWHERE
        with pytest.raises(ValueError):
            wall_from_json({"type": "ellipse"})

    def test_encloses(self):
        big = SemicircleWall(0, 4)
        assert big.encloses(SemicircleWall(F(1, 2), F(1, 4)))
        assert big.encloses(SemicircleWall(1, 1))  # internally tangent
        assert not big.encloses(SemicircleWall(F(3, 2), 1))
        assert not SemicircleWall(F(1, 2), F(1, 4)).encloses(big)


class TestNumericalWall:
    def test_examples(self):
        assert numerical_wall(D1, V, line_bundle(-1)) == O_MINUS_1
        assert numerical_wall(D1, V, UNIT) == VerticalWall(0)
        assert numerical_wall(D1, V, V) is EVERYWHERE
        assert numerical_wall(D1, V, 3 * V) is EVERYWHERE

    def test_degenerate_pairs(self):
        assert numerical_wall(D1, C(0, 0, 1), C(0, 0, 2)) is EVERYWHERE
        # equal rank and c1, different ch2: the charges differ by a real constant
        assert numerical_wall(D1, C(0, 1, 0), C(0, 1, 1)) is NOWHERE

    @given(contexts, lattice_truncations(), lattice_truncations())
    def test_against_oracle(self, ctx, v, u):
        got = numerical_wall(ctx, v, u)
        exp = oracle.wall_locus(ctx.degree, v, u)
        if got is EVERYWHERE:
            assert exp == "everywhere"
        elif got is NOWHERE:
            assert exp is None
        else:
            assert _as_oracle_locus(got) == exp

    @given(contexts, lattice_truncations(), lattice_truncations(), st.integers(1, 6))
    def test_symmetry_and_scaling(self, ctx, v, u, c):
        w = numerical_wall(ctx, v, u)
        assert numerical_wall(ctx, u, v) == w
        assert numerical_wall(ctx, v, v - u) == w
        assert numerical_wall(ctx, c * v, u) == w
        assert numerical_wall(ctx, v, -c * u) == w

    @given(contexts, lattice_truncations(4, 6, 6), lattice_truncations(4, 6, 6))
    def test_slope_identity_vanishes_on_wall(self, ctx, v, u):
        w = numerical_wall(ctx, v, u)
        assume(isinstance(w, (SemicircleWall, VerticalWall)))
        if isinstance(w, VerticalWall):
            for s in (F(1, 7), 1, 5):
                assert slope_identity(ctx, v, u, s, w.beta0) == 0
            return
        for b in _sample_betas(w):
            s = w.s_at(b)
            assert s > 0
            assert slope_identity(ctx, v, u, s, b) == 0
            assert slope_identity(ctx, v, u, s + F(1, 3), b) != 0

    @given(contexts, lattice_truncations(3, 5, 4), lattice_truncations(3, 5, 4), lattice_truncations(3, 5, 4))
    def test_walls_of_one_class_never_cross(self, ctx, v, u1, u2):
        assume(q_form(ctx, v) >= 0 and (v.a0, v.a1) != (0, 0))
        w1, w2 = numerical_wall(ctx, v, u1), numerical_wall(ctx, v, u2)
        assume(isinstance(w1, SemicircleWall) and isinstance(w2, SemicircleWall) and w1 != w2)
        # a common point would have s > 0 on both circles
        if w1.center == w2.center:
            return
        b = ((w1.radius_sq - w2.radius_sq) - (w1.center ** 2 - w2.center ** 2)) / (2 * (w2.center - w1.center))
        assert w1.s_at(b) <= 0


class TestHeartSign:
    def test_examples(self):
        assert heart_sign(V, F(-1)) == -1
        assert heart_sign(kappa1(D1), F(-1)) == 1
        assert heart_sign(UNIT, F(0)) == -1
        assert heart_sign(C(0, 0, 1), F(0)) == 0

    @given(contexts, lattice_truncations(), rationals(3, 6), rationals(3, 6))
    def test_normalized_charge(self, ctx, E, s, b):
        assume(s > 0)
        sg = heart_sign(E, b)
        assume(sg != 0)
        z = z_tilt(ctx, sg * E, TiltPoint(s, b))
        assert z.im > 0 or (z.im == 0 and (sg * E).a0 < 0)


class TestWindowPoint:
    def test_inside(self):
        win = Window(-2, 0, 4)
        pt = window_point(O_MINUS_1, win)
        assert pt is not None and -2 < pt.beta < 0 and 0 < pt.s < 4
        assert O_MINUS_1.s_at(pt.beta) == pt.s

    def test_missing(self):
        assert window_point(O_MINUS_1, Window(-1, 0)) is None
        assert window_point(VerticalWall(0), Window(-1, 0)) is None
        # the wall only reaches height 1/4
        assert window_point(SemicircleWall(0, 4), Window(-F(1, 10), F(1, 10), 1)) is None

    @given(rationals(3, 6), rationals(3, 6).filter(lambda x: x > 0), rationals(3, 6), rationals(3, 6))
    def test_point_is_on_wall_and_in_window(self, c, r2, lo, width):
        assume(width > 0)
        w, win = SemicircleWall(c, r2), Window(lo, lo + width, F(1, 2))
        pt = window_point(w, win)
        if pt is not None:
            assert w.s_at(pt.beta) == pt.s and 0 < pt.s < F(1, 2) and lo < pt.beta < lo + width


class TestScanExamples:
    def test_strip_is_empty(self):
        res = scan_candidates(D1, V, Window(-1, 0, 4))
        assert list(res) == [] and res.complete

    def test_wider_window_has_line_bundle_wall(self):
        res = _quiet_scan(D1, V, Window(-2, 0, 4))
        assert O_MINUS_1 in res.loci()

    def test_vertical_wall_listed_first(self):
        res = _quiet_scan(D1, V, Window(-2, 1))
        assert res.loci()[0] == VerticalWall(0)
        radii = [w.radius_sq for w in res.loci()[1:]]
        assert radii == sorted(radii, reverse=True)

    @pytest.mark.parametrize("v", [UNIT, line_bundle(2), line_bundle(-3), C(0, 0, 1), C(0, 0, 0, 1)])
    def test_zero_discriminant(self, v):
        for win in (Window(-5, 5), Window(-1, 0, 1)):
            res = scan_candidates(D1, v, win)
            assert list(res) == [] and res.complete
            assert oracle.brute_walls(1, v, win.beta_min, win.beta_max, 3, 2) == set()

    def test_incomplete_warns(self):
        with pytest.warns(ScanIncompleteWarning):
            res = scan_candidates(D1, V, Window(-2, 0, 4))
        assert not res.complete and res.reasons

    def test_bounds_validation(self):
        with pytest.raises(ValueError):
            ScanBounds(max_rank=0)
        with pytest.raises(ValueError):
            ScanBounds(ch2_denominator=0)
        assert ScanBounds().denominator(FanoContext(3)) == 6
        with pytest.raises(ValueError):
            Window(0, 0)
        with pytest.raises(ValueError):
            Window(0, 1, 0)


def _random_cases(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        d = rng.randint(1, 3)
        den = 2 * d
        v = C(rng.randint(-3, 3), rng.randint(-3, 3), F(rng.randint(-6, 6), den))
        lo = F(rng.randint(-8, 4), 2)
        hi = lo + F(rng.randint(1, 6), 2)
        out.append((d, v, lo, hi))
    return out


class TestScanAgainstBruteForce:
    @pytest.mark.parametrize("d,v,lo,hi", _random_cases(24, 7))
    def test_box_subset_and_soundness(self, d, v, lo, hi):
        ctx = FanoContext(d)
        res = _quiet_scan(ctx, v, Window(lo, hi))
        got = {_as_oracle_locus(w) for w in res.loci()}
        for cw in res:
            # every reported wall is certified by the oracle's filters
            assert oracle.accepts(d, v, cw.destabilizer, lo, hi) == _as_oracle_locus(cw.wall)
        if res.complete:
            assert oracle.brute_walls(d, v, lo, hi, 3, 2 * d) <= got

    @pytest.mark.parametrize("d,v,lo,hi", _random_cases(10, 11))
    def test_candidate_invariants(self, d, v, lo, hi):
        ctx = FanoContext(d)
        for cw in _quiet_scan(ctx, v, Window(lo, hi)):
            w = cw.destabilizer + cw.cowall_class
            assert w in (v, -v)
            assert cw.q_sub >= 0 and cw.q_quot >= 0
            assert cw.q_sub + cw.q_quot <= q_form(ctx, v)
            assert cw.q_sub == q_form(ctx, cw.destabilizer)
            assert slope_identity(ctx, w, cw.destabilizer, cw.witness.s, cw.witness.beta) == 0
            assert lo < cw.witness.beta < hi

    @pytest.mark.parametrize("d,v,lo,hi", _random_cases(8, 3))
    def test_nesting(self, d, v, lo, hi):
        ctx = FanoContext(d)
        semis = [w for w in _quiet_scan(ctx, v, Window(lo, hi)).loci() if isinstance(w, SemicircleWall)]
        for i, a in enumerate(semis):
            for b in semis[i + 1:]:
                gap = (a.center - b.center) ** 2 - a.radius_sq - b.radius_sq
                transversal = gap * gap < 4 * a.radius_sq * b.radius_sq
                assert not transversal


class TestScanDeterminism:
    def test_seed_independent(self):
        ctx = FanoContext(2)
        v = C(-2, 1, F(1, 4))
        win = Window(-3, 1)
        base = _quiet_scan(ctx, v, win)
        for seed in (1, 2, 99):
            assert _quiet_scan(ctx, v, win, seed=seed) == base

    def test_parallel_matches_serial(self):
        win = Window(-3, 0)
        assert _quiet_scan(D1, V, win, jobs=2) == _quiet_scan(D1, V, win)

    def test_json_round_trip(self):
        res = _quiet_scan(D1, V, Window(-2, 1))
        enc = json.dumps(res.to_json(), sort_keys=True)
        back = [CandidateWall.from_json(c) for c in json.loads(enc)["walls"]]
        assert back == list(res.walls)
        assert isinstance(res, ScanResult) and len(res) == len(back)


class TestStrip:
    def test_unit_strip(self):
        rep = verify_strip_empty(D1, V, (-1, 0))
        assert rep.ok
        assert rep.sign == -1 and rep.im_left == 1 == rep.minimal_im
        assert rep.minimality_holds and rep.limit_point_outside and rep.scan_empty
        assert json.loads(json.dumps(rep.to_json()))["ok"] is True

    def test_next_strip_fails(self):
        rep = verify_strip_empty(D1, V, (-2, -1))
        assert not rep.ok
        assert not rep.minimality_holds or not rep.scan_empty

    def test_torsion_not_applicable(self):
        rep = verify_strip_empty(D1, C(0, 0, 1), (-1, 0))
        assert not rep.ok and rep.not_applicable
        with pytest.raises(NotApplicableError):
            verify_strip_empty(D1, C(0, 0, 1), (-1, 0), strict=True)

    def test_half_integer_edge(self):
        rep = verify_strip_empty(D1, V, (F(-1, 2), 0))
        # at beta = -1/2 the lattice floor for Im Z drops to 1/2
        assert rep.minimal_im == F(1, 2) == rep.im_left
        assert rep.ok


class TestLargestWall:
    def test_left_of_vertical_wall(self):
        cw, complete = largest_wall(D1, V, side="left")
        assert complete and cw.wall == O_MINUS_1

    def test_symmetric_sides(self):
        right, _ = largest_wall(D1, V, side="right")
        assert right.wall == SemicircleWall(F(3, 2), F(1, 4))
        both, _ = largest_wall(D1, V)
        assert both.wall.radius_sq == F(1, 4)

    @pytest.mark.parametrize("v", [UNIT, line_bundle(1), C(0, 0, 1)])
    def test_none_for_flat_classes(self, v):
        assert largest_wall(D1, v) == (None, True)

    def test_doubled_class(self):
        cw, complete = largest_wall(D1, 2 * V, side="left")
        assert complete
        assert cw.wall == SemicircleWall(-2, 2)
        assert cw.wall.encloses(O_MINUS_1)
        res = _quiet_scan(D1, 2 * V, Window(-2, 0, 4))
        assert O_MINUS_1 in res.loci()
        assert oracle.accepts(1, 2 * V, cw.destabilizer, -3, 0) == ("semicircle", F(-2), F(2))

    def test_is_largest_in_scan(self):
        cw, _ = largest_wall(D1, V, side="left")
        res = _quiet_scan(D1, V, Window(-3, 0))
        semis = [w for w in res.loci() if isinstance(w, SemicircleWall)]
        assert max(w.radius_sq for w in semis) == cw.wall.radius_sq


class TestRender:
    def test_empty_is_axes_only(self):
        svg = render_walls([], Window(-2, 0))
        assert svg.startswith("<?xml") and svg.endswith("</svg>\n")
        assert "<path" not in svg and "stroke-dasharray" not in svg
        assert ">beta<" in svg and ">alpha<" in svg

    def test_atlas(self):
        res = _quiet_scan(D1, V, Window(F(-129, 64), F(1, 32), 4))
        svg = render_walls(res, Window(-2, 0, 4), Style(title="atlas"))
        assert svg.count('stroke-dasharray="6,4"/>') == 2  # plot and legend
        assert "center -3/2, radius^2 1/4" in svg
        assert "<title>atlas</title>" in svg

    def test_deterministic(self):
        res = _quiet_scan(D1, V, Window(-3, 1))
        assert render_walls(res, Window(-3, 1)) == render_walls(res, Window(-3, 1))

    def test_dedup(self):
        a = SemicircleWall(F(-3, 2), F(1, 4), line_bundle(-1))
        b = SemicircleWall(F(-3, 2), F(1, 4), 2 * line_bundle(-1))
        svg = render_walls([a, b], Window(-2, 0))
        assert svg.count("<path") == 1

    def test_fixed_precision(self):
        svg = render_walls([SemicircleWall(F(1, 3), F(1, 7))], Window(0, 1))
        nums = [t for t in svg.replace('"', " ").split() if t.replace(".", "").replace("-", "").isdigit()]
        assert all(len(t.replace("-", "").replace(".", "")) <= 12 for t in nums)
