import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rkgeo import metrics as me
from rkgeo.errors import NumericalContradiction, OutOfDomain, ValidationError
from rkgeo.kernels import SpaceSpec

from conftest import disk_points, plane_points

HARDY = SpaceSpec.hardy()
BERGMAN = SpaceSpec.bergman()
BARGMANN = SpaceSpec.bargmann()
DISK_SPACES = [HARDY, BERGMAN]


@st.composite
def disk_point(draw, radius=0.95):
    r = draw(st.floats(0, radius))
    t = draw(st.floats(0, 2 * math.pi))
    return complex(r * math.cos(t), r * math.sin(t))


plane_point = st.builds(complex, st.floats(-3, 3), st.floats(-3, 3))


class TestExamples:
    def test_zero_distance(self):
        for space, p in ((HARDY, 0.3j), (BERGMAN, -0.5), (BARGMANN, 2 + 1j)):
            assert me.gamma(space, p, p) == 0
            assert me.delta(space, p, p) == 0
            assert me.delta_hat(space, p, p) == 0
        assert me.rho(0.4, 0.4) == 0

    def test_hardy_pi_over_6(self):
        assert me.gamma(HARDY, 0, 0.5) == pytest.approx(math.pi / 6, abs=1e-15)

    def test_bargmann_far(self):
        assert me.gamma(BARGMANN, 0, 40) == pytest.approx(math.pi / 2)

    def test_rho_domain(self):
        with pytest.raises(OutOfDomain):
            me.rho(1, 0)

    def test_projection_norms(self):
        out = me.projection_norm_check(HARDY, 0, 0.5)
        assert out["op_norm"] == pytest.approx(0.5)
        assert out["schatten"][2] == pytest.approx(math.sqrt(2) * 0.5)

    def test_projection_contradiction(self, monkeypatch):
        monkeypatch.setattr(me, "delta", lambda *a: 0.0)
        with pytest.raises(NumericalContradiction):
            me.projection_norm_check(HARDY, 0, 0.5)

    def test_kobayashi_alias(self):
        assert me.kobayashi(HARDY, 0.1, 0.4j) == me.gamma(HARDY, 0.1, 0.4j)


class TestRelations:
    @pytest.mark.parametrize("space", [HARDY, BERGMAN, BARGMANN], ids=lambda s: s.variant)
    def test_relations(self, space, rng):
        for _ in range(200):
            a, b = plane_points(rng, 2, 1.0) if space is BARGMANN else disk_points(rng, 2)
            g, d, dh = me.gamma(space, a, b), me.delta(space, a, b), me.delta_hat(space, a, b)
            assert abs(d - math.sin(g)) < 1e-12
            assert abs(dh - math.sqrt(2) * math.sin(g / 2)) < 1e-12
            assert abs(g - me.closed_form_gamma(space, a, b)) < 1e-12
        for _ in range(20):
            a, b = plane_points(rng, 2, 1.0) if space is BARGMANN else disk_points(rng, 2)
            assert me.projection_norm_check(space, a, b)["max_deviation"] < 1e-10

    def test_hardy_arcsin_rho(self, rng):
        for _ in range(300):
            a, b = disk_points(rng, 2)
            assert abs(me.gamma(HARDY, a, b) - math.asin(me.rho(a, b))) < 1e-13

    def test_nearby_points_accurate(self):
        a = 0.3 + 0.1j
        h = 1e-9
        # gamma ~ |a-b| / (1-|a|^2) for nearby points in Hardy
        assert me.gamma(HARDY, a, a + h) == pytest.approx(h / (1 - abs(a) ** 2), rel=1e-6)

    def test_gamma_n(self, rng):
        a, b = disk_points(rng, 2)
        assert me.gamma_n(HARDY, [a], [b]) == pytest.approx(me.gamma(HARDY, a, b), abs=1e-12)
        A, B = disk_points(rng, 3), disk_points(rng, 3)
        assert me.gamma_n(HARDY, A, B) == pytest.approx(me.gamma_n(HARDY, B, A), abs=1e-10)
        from rkgeo.grassmann import generic_frame
        from rkgeo import numerics as nu

        f = generic_frame(HARDY, A, B)
        assert me.gamma_n(HARDY, A, B) == pytest.approx(math.asin(nu.op_norm(f.P - f.Q)), abs=1e-9)


class TestMoebius:
    def test_identity(self):
        m = me.MoebiusMap(0, -1)
        z = 0.3 - 0.2j
        assert m(m(z)) == pytest.approx(z)

    def test_validation(self):
        with pytest.raises(OutOfDomain):
            me.MoebiusMap(1.0)
        with pytest.raises(ValidationError):
            me.MoebiusMap(0.1, 2.0)
        with pytest.raises(ValidationError):
            me.moebius_invariance_check(BARGMANN, me.MoebiusMap(0.1), 0.1, 0.2)

    @pytest.mark.parametrize("space,tol", [(HARDY, 1e-12), (BERGMAN, 1e-11)], ids=["hardy", "bergman"])
    def test_invariance(self, space, tol, rng):
        for _ in range(200):
            a, z1, z2 = disk_points(rng, 3)
            m = me.MoebiusMap.from_angle(a, rng.uniform(0, 2 * math.pi))
            assert me.moebius_invariance_check(space, m, z1, z2) < tol


class TestHypothesis:
    @settings(max_examples=200, deadline=None)
    @given(st.sampled_from(DISK_SPACES), disk_point(), disk_point(), disk_point())
    def test_triangle_disk(self, space, x, y, z):
        for fn in (me.delta, me.delta_hat, me.gamma):
            assert fn(space, x, z) <= fn(space, x, y) + fn(space, y, z) + 1e-12

    @settings(max_examples=200, deadline=None)
    @given(plane_point, plane_point, plane_point)
    def test_triangle_bargmann(self, x, y, z):
        for fn in (me.delta, me.delta_hat, me.gamma):
            assert fn(BARGMANN, x, z) <= fn(BARGMANN, x, y) + fn(BARGMANN, y, z) + 1e-12

    @settings(max_examples=300, deadline=None)
    @given(st.sampled_from(DISK_SPACES), disk_point(), disk_point())
    def test_ordering_and_symmetry(self, space, a, b):
        g, d, dh = me.gamma(space, a, b), me.delta(space, a, b), me.delta_hat(space, a, b)
        assert dh <= d + 1e-15 <= g + 2e-15
        assert 0 <= g <= math.pi / 2
        assert me.gamma(space, b, a) == pytest.approx(g, abs=1e-15)

    @settings(max_examples=200, deadline=None)
    @given(disk_point(), disk_point(), disk_point(0.9), st.floats(0, 2 * math.pi))
    def test_rho_invariance(self, a, b, c, t):
        m = me.MoebiusMap.from_angle(c, t)
        assert me.rho(m(a), m(b)) == pytest.approx(me.rho(a, b), abs=1e-12)
