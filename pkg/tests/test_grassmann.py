import math

import numpy as np
import pytest

from rkgeo import grassmann as gr
from rkgeo import numerics as nu
from rkgeo.errors import (
    BranchAmbiguity,
    CardinalityMismatch,
    LinearlyDependentKernels,
    SetsIntersect,
    SingularSum,
)
from rkgeo.gram import bargmann_degenerate_pair
from rkgeo.kernels import SpaceSpec
from rkgeo.metrics import rho

from conftest import disk_points, plane_points

HARDY = SpaceSpec.hardy()
BERGMAN = SpaceSpec.bergman()
BARGMANN = SpaceSpec.bargmann()


def random_pair(space, rng, n):
    pts = plane_points(rng, 2 * n, 1.0) if space is BARGMANN else disk_points(rng, 2 * n)
    return pts[:n], pts[n:]


class TestFrame:
    def test_hand_case(self):
        f = gr.generic_frame(HARDY, [0], [0.5])
        assert np.allclose(f.G, [[1, 1], [1, 4 / 3]])
        assert np.allclose(np.trace(f.P), 1) and np.allclose(np.trace(f.Q).real, 1)
        assert max(f.invariant_residuals().values()) < 1e-14

    @pytest.mark.parametrize("space", [HARDY, BERGMAN, BARGMANN], ids=lambda s: s.variant)
    def test_invariants(self, space, rng):
        for n in range(1, 6):
            f = gr.generic_frame(space, *random_pair(space, rng, n))
            assert abs(np.trace(f.P).real - n) < 1e-12
            assert max(f.invariant_residuals().values()) < 1e-9

    def test_errors(self):
        with pytest.raises(CardinalityMismatch):
            gr.generic_frame(HARDY, [0.1, 0.2], [0.3])
        with pytest.raises(SetsIntersect):
            gr.generic_frame(HARDY, [0.1], [0.1])
        with pytest.raises(LinearlyDependentKernels):
            gr.generic_frame(BERGMAN, [0.3], [0.3 + 1e-9])


class TestExponent:
    def test_single_point_hardy(self):
        for r in (0.1, 0.5, 0.9, 0.99):
            X = gr.geodesic_exponent(gr.generic_frame(HARDY, [0], [r]))
            assert X.norm == pytest.approx(math.asin(r), abs=1e-12)
            assert X.lambdas[0] == pytest.approx(math.acos(math.sqrt(1 - r * r)), abs=1e-12)

    def test_trivial(self):
        P = np.diag([0, 1.0]).astype(complex)
        f = gr.frame_from_projections(P, P)
        X = gr.geodesic_exponent(f)
        assert np.allclose(X.X, 0)

    @pytest.mark.parametrize("space", [HARDY, BERGMAN, BARGMANN], ids=lambda s: s.variant)
    def test_contract(self, space, rng):
        for n in range(1, 6):
            f = gr.generic_frame(space, *random_pair(space, rng, n))
            X = gr.geodesic_exponent(f)
            r = X.residuals
            assert r["endpoint"] <= 1e-8
            assert max(r["codiagP"], r["codiagQ"]) <= 1e-9
            assert X.norm <= math.pi / 2 + 1e-10
            assert r["distance_identity"] <= 1e-9
            assert r["pairing"] <= 1e-9

    def test_eigenpairs_match_matrix(self, rng):
        f = gr.generic_frame(HARDY, disk_points(rng, 3), disk_points(rng, 3))
        e = gr.geodesic_exponent(f)
        U, lam = e.eigenvectors, e.eigenvalues
        assert np.abs(e.X @ U - U * lam).max() < 1e-12
        assert np.abs(U.conj().T @ U - np.eye(6)).max() < 1e-12

    def test_agrees_with_principal_log(self, rng):
        f = gr.generic_frame(HARDY, disk_points(rng, 3, 0.6), disk_points(rng, 3, 0.6))
        I = np.eye(6)
        S = (2 * f.Q - I) @ (2 * f.P - I)
        X_log = 0.5 * nu.unitary_log_principal(S)
        assert nu.op_norm(gr.geodesic_exponent(f).X - X_log) < 1e-10

    def test_branch_ambiguity(self):
        P = np.diag([0, 1.0]).astype(complex)
        f = gr.frame_from_projections(P, np.eye(2) - P)
        with pytest.raises(BranchAmbiguity):
            gr.geodesic_exponent(f)

    def test_bargmann_degenerate_frame(self):
        A, B = bargmann_degenerate_pair(1, 2, 3)
        with pytest.raises((BranchAmbiguity, LinearlyDependentKernels)):
            gr.geodesic_exponent(gr.generic_frame(BARGMANN, A, B))

    def test_json(self):
        f = gr.generic_frame(HARDY, [0], [0.5])
        j = gr.geodesic_exponent(f).to_json(f)
        assert set(j) == {"lambdas", "distance", "residuals", "condition"}


class TestGeodesicPoint:
    def test_endpoints(self, rng):
        f = gr.generic_frame(HARDY, *random_pair(HARDY, rng, 3))
        X = gr.geodesic_exponent(f)
        assert np.allclose(gr.geodesic_point(X, f, 0), f.P, atol=1e-14)
        assert nu.op_norm(gr.geodesic_point(X, f, 1) - f.Q) < 1e-8

    def test_midpoint_angle(self):
        f = gr.generic_frame(HARDY, [0], [0.6])
        X = gr.geodesic_exponent(f)
        D = gr.geodesic_point(X, f, 0.5)
        # distance sin(angle) between rank-one projections
        assert nu.op_norm(D - f.P) == pytest.approx(math.sin(0.5 * math.asin(0.6)), abs=1e-12)

    def test_projection_along_path(self, rng):
        f = gr.generic_frame(BERGMAN, *random_pair(BERGMAN, rng, 4))
        X = gr.geodesic_exponent(f)
        for t in np.linspace(0, 1, 7):
            D = gr.geodesic_point(X, f, t)
            assert nu.op_norm(D @ D - D) < 1e-12
            # constant speed along the geodesic
            assert math.asin(min(1.0, nu.op_norm(D - f.P))) == pytest.approx(t * X.norm, abs=1e-9)

    def test_csv(self):
        f = gr.generic_frame(HARDY, [0], [0.5])
        text = gr.geodesic_csv(gr.geodesic_exponent(f), f, [0, 1])
        lines = text.strip().splitlines()
        assert lines[0] == "t,dist_P,dist_Q,idempotency"
        assert len(lines) == 3


class TestIntersections:
    def test_hardy(self, rng):
        assert gr.intersection_dims(HARDY, *random_pair(HARDY, rng, 4)) == (0, 0)

    def test_bargmann(self):
        assert gr.intersection_dims(BARGMANN, *bargmann_degenerate_pair(1, 2, 3)) == (1, 1)

    def test_unequal(self, rng):
        pts = disk_points(rng, 5)
        d10, d01 = gr.intersection_dims(HARDY, pts[:3], pts[3:])
        assert d01 - d10 == 1


class TestDixmierAndAndo:
    def test_dixmier_orthogonal(self):
        P = np.diag([1.0, 0]).astype(complex)
        f = gr.frame_from_projections(P, np.eye(2) - P)
        assert gr.dixmier_cosine(f) == 0

    def test_dixmier_hardy(self):
        for r in (0.2, 0.7):
            f = gr.generic_frame(HARDY, [0], [r])
            c, res = gr.dixmier_cosine(f, return_residual=True)
            assert c == pytest.approx(math.sqrt(1 - r * r), abs=1e-12)
            assert res < 1e-12

    def test_complementary(self):
        P = np.diag([0, 1.0]).astype(complex)
        Q = np.diag([1.0, 0]).astype(complex)
        f = gr.frame_from_projections(P, Q)
        E = gr.ando_idempotent(f).E
        assert np.allclose(E, np.eye(2) - P)

    def test_singular_sum(self):
        P = np.diag([0, 1.0]).astype(complex)
        with pytest.raises(SingularSum):
            gr.ando_idempotent(gr.frame_from_projections(P, P))

    def test_hardy_single(self):
        a, b = 0.1 + 0.2j, -0.4 + 0.3j
        f = gr.generic_frame(HARDY, [a], [b])
        ando = gr.ando_idempotent(f)
        assert ando.angles[0] == pytest.approx(math.asin(rho(a, b)), abs=1e-12)

    @pytest.mark.parametrize("space", [HARDY, BERGMAN, BARGMANN], ids=lambda s: s.variant)
    def test_spectral_link(self, space, rng):
        for n in range(1, 6):
            f = gr.generic_frame(space, *random_pair(space, rng, n))
            X = gr.geodesic_exponent(f)
            ando = gr.ando_idempotent(f, X)
            assert ando.residuals["spectral_link"] <= 1e-8
            assert ando.residuals["idempotent"] < 1e-10
            assert ando.residuals["range"] < 1e-10 and ando.residuals["kernel"] < 1e-10
            assert gr.halmos_residual(f, X) < 1e-9
