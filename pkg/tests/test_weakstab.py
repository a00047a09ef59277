import json
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracle
from fano_walls.kulattice import kappa1
from fano_walls.numclass import UNIT, ChernCharacter as C, FanoContext, line_bundle, twist
from fano_walls.walls import heart_sign
from fano_walls.weakstab import (
    ChargeValue,
    DegenerateChargeError,
    SlopeValue,
    TiltPoint,
    bms_ch3_bound,
    bms_inequality,
    compare_charges,
    in_region_v,
    mu_tilt,
    mu_zero,
    q_form,
    slope_mumford,
    z_tilt,
    z_zero,
)
from strategies import classes, contexts, rationals

D1 = FanoContext(1)
INF = SlopeValue.infinite()
pos = rationals(4, 12).filter(lambda x: x > 0)
points = st.builds(TiltPoint, pos, rationals(4, 12))


def test_tilt_point_validation():
    with pytest.raises(ValueError):
        TiltPoint(0, 0)
    with pytest.raises(TypeError):
        TiltPoint(0.5, 0)
    p = TiltPoint(F(1, 3), F(-1, 2))
    assert TiltPoint.from_json(json.loads(json.dumps(p.to_json()))) == p


class TestMumford:
    def test_examples(self):
        assert slope_mumford(D1, line_bundle(-1)) == SlopeValue(-1)
        assert slope_mumford(D1, C(0, 0, 1, 0)) == INF
        assert slope_mumford(FanoContext(3), C(2, 1, 0, 0)) == SlopeValue(F(1, 2))

    def test_infinity_is_top(self):
        assert SlopeValue(10 ** 9) < INF
        assert not INF < SlopeValue(0)
        assert str(INF) == "+inf"


class TestCharges:
    @given(contexts, classes, points)
    def test_against_oracle(self, ctx, E, p):
        assert z_tilt(ctx, E, p) == ChargeValue(*oracle.tilt_charge(ctx.degree, E, p.s, p.beta))

    @given(rationals())
    def test_strip_lower_edge(self, s):
        assume(s > 0)
        p = TiltPoint(s, -1)
        k1 = kappa1(D1)
        assert z_tilt(D1, -k1, p).im == -1
        assert z_tilt(D1, heart_sign(-k1, F(-1)) * -k1, p).im == 1

    def test_structure_sheaf_at_zero(self):
        assert z_tilt(D1, UNIT, TiltPoint(1, 0)).im == 0

    @given(pos, rationals(1, 24))
    def test_closed_form_for_kappa1(self, s, b):
        z = z_tilt(D1, kappa1(D1), TiltPoint(s, b))
        assert z == ChargeValue((s - b * b) / 2 + 1, -b)
        assert z_tilt(D1, -kappa1(D1), TiltPoint(s, b)) == ChargeValue(-z.re, -z.im)

    @given(contexts, classes, points)
    def test_rotation(self, ctx, E, p):
        z = z_tilt(ctx, E, p)
        assert z_zero(ctx, E, p) == ChargeValue(z.im, -z.re)

    @given(contexts, classes, points)
    def test_shift_invariance(self, ctx, E, p):
        # twisting by beta' moves the charge to beta - beta'
        b = F(1, 3)
        assert z_tilt(ctx, twist(E, b), TiltPoint(p.s, p.beta - b)) == z_tilt(ctx, E, p)


class TestSlopes:
    @given(pos, rationals(1, 24))
    def test_mu_zero_chain(self, s, b):
        assume(-1 < b < 0 and s != b * b)
        p = TiltPoint(s, b)
        assert mu_zero(D1, kappa1(D1), p) == SlopeValue(b / -((s - b * b) / 2 + 1))
        assert mu_zero(D1, C(0, 0, 1, 0), p) == SlopeValue(0)
        assert mu_zero(D1, UNIT, p) == SlopeValue(2 * b / -(s - b * b))

    def test_mu_zero_degenerate_point(self):
        # s = beta^2 makes Re Z(O_Y) vanish, so the rotated slope is +inf
        assert mu_zero(D1, UNIT, TiltPoint(F(1, 16), F(-1, 4))) == INF
        assert mu_zero(D1, UNIT, TiltPoint(F(1, 8), F(-1, 4))) == SlopeValue(8)

    @given(contexts, classes, points)
    def test_mu_tilt_definition(self, ctx, E, p):
        z = z_tilt(ctx, E, p)
        mu = mu_tilt(ctx, E, p)
        assert mu == (INF if z.im == 0 else SlopeValue(-z.re / z.im))

    @given(contexts, classes, classes, points, st.integers(1, 9))
    def test_comparison_scale_invariant(self, ctx, E, G, p, c):
        ze, zg = z_tilt(ctx, E, p), z_tilt(ctx, G, p)
        zc = z_tilt(ctx, c * E, p)
        if ze.im < 0 or (ze.im == 0 and ze.re <= 0) or zg.im < 0 or (zg.im == 0 and zg.re == 0):
            return
        assert compare_charges(zc, zg) == compare_charges(ze, zg)

    @given(contexts, classes, classes, points)
    def test_compare_matches_slopes(self, ctx, E, G, p):
        ze, zg = z_tilt(ctx, E, p), z_tilt(ctx, G, p)
        assume(ze.im > 0 and zg.im > 0)
        a, b = ze.slope(), zg.slope()
        assert compare_charges(ze, zg) == (a > b) - (a < b)

    def test_compare_edge_cases(self):
        with pytest.raises(DegenerateChargeError):
            compare_charges(ChargeValue(F(0), F(0)), ChargeValue(F(1), F(1)))
        with pytest.raises(ValueError):
            compare_charges(ChargeValue(F(0), F(-1)), ChargeValue(F(1), F(1)))
        assert compare_charges(ChargeValue(F(-1), F(0)), ChargeValue(F(5), F(1))) == 1
        assert compare_charges(ChargeValue(F(-1), F(0)), ChargeValue(F(-2), F(0))) == 0


class TestQForm:
    @given(rationals())
    def test_kappa1(self, b):
        assert q_form(D1, kappa1(D1), b) == 2

    @given(contexts, st.integers(-6, 6), rationals())
    def test_line_bundles(self, ctx, k, b):
        assert q_form(ctx, line_bundle(k), b) == 0

    @given(rationals())
    def test_torsion_curve(self, b):
        assert q_form(D1, C(0, 0, 1, 0), b) == 0

    @given(contexts, classes, st.lists(rationals(), min_size=20, max_size=20))
    def test_beta_independent(self, ctx, E, betas):
        q = q_form(ctx, E)
        assert all(q_form(ctx, E, b) == q for b in betas)

    @given(contexts, classes, st.integers(-5, 5))
    def test_homogeneous(self, ctx, E, c):
        assert q_form(ctx, c * E) == c * c * q_form(ctx, E)


class TestBMS:
    @pytest.mark.parametrize("beta,bound", [(F(-1, 2), F(3, 2)), (F(-1), F(1))])
    def test_ideal_of_line_bounds(self, beta, bound):
        for m in (bound - F(1, 7), bound, bound + F(1, 7)):
            val = bms_inequality(D1, C(1, 0, -1, m), 0, beta)
            assert (val >= 0) == (m <= bound)
        assert bms_ch3_bound(D1, C(1, 0, -1, 0), 0, beta) == bound

    @given(contexts)
    def test_structure_sheaf_origin(self, ctx):
        assert bms_inequality(ctx, UNIT, 0, 0) == 0

    @given(contexts, classes, rationals(), pos, pos)
    def test_affine_in_s(self, ctx, E, b, s1, s2):
        q = q_form(ctx, E)
        diff = bms_inequality(ctx, E, s2, b) - bms_inequality(ctx, E, s1, b)
        assert diff == (s2 - s1) * q
        if q >= 0 and s2 >= s1:
            assert diff >= 0

    def test_errors(self):
        with pytest.raises(ValueError):
            bms_inequality(D1, UNIT, -1, 0)
        assert bms_ch3_bound(D1, UNIT, 1, 0) is None
        with pytest.raises(ValueError):
            bms_ch3_bound(D1, UNIT, 1, 1)


class TestRegionV:
    def test_examples(self):
        assert in_region_v(TiltPoint(F(1, 100), F(-1, 2)))
        assert not in_region_v(TiltPoint(F(1, 4), F(-1, 2)))
        assert not in_region_v(TiltPoint(F(1, 100), F(1, 2)))

    @given(points)
    def test_definition(self, p):
        b = p.beta
        expected = -1 < b < 0 and p.s < b * b and p.s < (b + 1) ** 2
        assert in_region_v(p) == expected


@given(pos)
def test_vertical_mechanism_at_zero(s):
    p = TiltPoint(s, 0)
    assert z_tilt(D1, UNIT, p).im == 0
    assert z_tilt(D1, C(0, 0, 1, 0), p).im == 0
