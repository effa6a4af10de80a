import itertools

import numpy as np
import pytest

from rkgeo import numerics as nu
from rkgeo.errors import (
    BranchAmbiguity,
    DegreeZero,
    NotHermitian,
    NotUnitary,
    TooLarge,
)


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def naive_permanent(m):
    n = m.shape[0]
    return sum(np.prod([m[i, p[i]] for i in range(n)]) for p in itertools.permutations(range(n)))


class TestHermitianEig:
    def test_diagonal(self):
        lam, U = nu.hermitian_eig(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(lam, [1, 2, 3])
        assert np.allclose(np.abs(U), np.eye(3)[:, [1, 2, 0]])

    def test_zero(self):
        lam, U = nu.hermitian_eig(np.zeros((3, 3)))
        assert np.allclose(lam, 0)
        assert np.allclose(U.conj().T @ U, np.eye(3))

    def test_two_by_two(self):
        x = 0.4
        lam, _ = nu.hermitian_eig(np.array([[0, -1j * x], [1j * x, 0]]))
        assert np.allclose(lam, [-x, x], atol=1e-15)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            nu.hermitian_eig(np.array([[0, 1.0], [0, 0]]))

    def test_reconstruction(self, rng):
        for n in range(1, 21):
            z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            h = z + z.conj().T
            lam, U = nu.hermitian_eig(h)
            assert np.linalg.norm((U * lam) @ U.conj().T - h, 2) < 1e-10 * max(1, np.abs(lam).max())


class TestSvd:
    def test_identity(self):
        assert np.allclose(nu.singular_values(np.eye(4)), 1)

    def test_rank_one(self, rng):
        u = rng.normal(size=5) + 1j * rng.normal(size=5)
        v = rng.normal(size=5) + 1j * rng.normal(size=5)
        u *= 2 / np.linalg.norm(u)
        v *= 3 / np.linalg.norm(v)
        s = nu.singular_values(np.outer(u, v.conj()))
        assert s[0] == pytest.approx(6)
        assert np.all(s[1:] < 1e-12)

    def test_sign(self):
        assert np.allclose(nu.singular_values(np.diag([-2.0, 1.0])), [2, 1])

    def test_factors(self, rng):
        m = rng.normal(size=(4, 3)) + 1j * rng.normal(size=(4, 3))
        s, U, V = nu.svd(m)
        assert np.all(np.diff(s) <= 0)
        assert np.allclose((U[:, :3] * s) @ V.conj().T, m)
        assert np.allclose(U.conj().T @ U, np.eye(4))


class TestUnitaryLog:
    def test_identity(self):
        assert np.allclose(nu.unitary_log_principal(np.eye(3)), 0)

    def test_diagonal(self):
        A = nu.unitary_log_principal(np.diag(np.exp([0.3j, -0.3j])))
        assert np.allclose(A, np.diag([0.3, -0.3]))

    def test_rotation(self):
        x = 0.7
        c, s = np.cos(2 * x), np.sin(2 * x)
        lam = np.linalg.eigvalsh(nu.unitary_log_principal(np.array([[c, -s], [s, c]])))
        assert np.allclose(lam, [-1.4, 1.4])

    def test_minus_one(self):
        with pytest.raises(BranchAmbiguity):
            nu.unitary_log_principal(-np.eye(2))
        A = nu.unitary_log_principal(-np.eye(2), allow_pi=True)
        assert np.allclose(A, np.pi * np.eye(2))

    def test_not_unitary(self):
        with pytest.raises(NotUnitary):
            nu.unitary_log_principal(2 * np.eye(2))

    def test_round_trip(self, rng):
        for n in (1, 2, 5, 9):
            S = random_unitary(rng, n)
            A = nu.unitary_log_principal(S)
            assert np.linalg.norm(nu.matrix_exp_i(A, 1) - S, 2) < 1e-9
            assert np.all(np.abs(np.linalg.eigvalsh(A)) <= np.pi)


class TestMatrixExp:
    def test_zero(self):
        for t in (0.0, 1.0, -3.2):
            assert np.allclose(nu.matrix_exp_i(np.zeros((2, 2)), t), np.eye(2))

    def test_pi(self):
        assert np.allclose(nu.matrix_exp_i(np.array([[np.pi]]), 1), [[-1]])


class TestPermanent:
    def test_small(self):
        assert nu.permanent(np.ones((2, 2))) == pytest.approx(2)
        for n in range(1, 8):
            assert nu.permanent(np.eye(n)) == pytest.approx(1)

    def test_against_naive(self, rng):
        for n in range(1, 7):
            m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            ref = naive_permanent(m)
            assert abs(nu.permanent(m) - ref) <= 1e-12 * max(1, abs(ref)) * 10

    def test_ones(self):
        assert nu.permanent(np.ones((6, 6))) == pytest.approx(720)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            nu.permanent(np.eye(nu.MAX_PERMANENT_SIZE + 1))


class TestRoots:
    def test_quadratic(self):
        assert np.allclose(sorted(nu.polynomial_roots([1, 0, -1]), key=lambda z: z.real), [-1, 1])

    def test_factored(self):
        c = np.convolve([1, -0.3j], [1, -0.5])
        r = sorted(nu.polynomial_roots(c), key=abs)
        assert np.allclose(r, [0.3j, 0.5], atol=1e-14)

    def test_degree_zero(self):
        with pytest.raises(DegreeZero):
            nu.polynomial_roots([3.0])

    def test_leading_zeros_trimmed(self):
        r = nu.polynomial_roots([0, 0, 1, -2])
        assert np.allclose(r, [2])


def test_rank_tolerance():
    m = np.diag([1.0, 1e-3, 1e-17])
    assert nu.numerical_rank(m) == 2
    assert nu.numerical_rank(m, tol=1e-2) == 1
