"""Geodesics between zero-set subspaces, computed on the generic part.

The kernels ``k_{a_1..a_n}, k_{b_1..b_n}`` span a ``2n``-dimensional space
``H0``.  A Cholesky factor of their Gram matrix gives orthonormal
coordinates in which ``P`` (projection onto ``Z_A ∩ H0``) and ``Q``
(projection onto ``Z_B ∩ H0``) are explicit ``2n x 2n`` matrices.  The
complementary block, ``Z_{A∪B}``, is left fixed by every geodesic and is
never materialised.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import numerics as nu
from .errors import (
    BranchAmbiguity,
    CardinalityMismatch,
    LinearlyDependentKernels,
    SingularSum,
    ValidationError,
)
from .gram import ensure_disjoint, geodesic_verdict
from .kernels import SpaceSpec, check_points, gram_matrix

MAX_CONDITION = 1e12
PROJECTION_TOL = 1e-11


@dataclass(frozen=True)
class GenericPartFrame:
    """Orthonormal coordinates on ``H0``.

    ``G`` is the raw Gram matrix and ``scale`` the kernel norms.  ``C`` is the
    upper-triangular factor of the unit-diagonal Gram ``G / (scale scale^T)``;
    column ``j`` of ``C`` holds the coordinates of the ``j``-th normalised
    kernel (``A`` first, then ``B``).  ``condition`` refers to the normalised
    Gram, so that kernels of very different size (Bargmann) are not mistaken
    for dependent ones.
    """

    space: SpaceSpec
    A: tuple
    B: tuple
    G: np.ndarray
    C: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    condition: float
    scale: np.ndarray = None

    @property
    def n(self):
        return len(self.A)

    def coords(self, j):
        return self.C[:, j]

    def invariant_residuals(self):
        I = np.eye(2 * self.n)
        out = {}
        for name, M in (("P", self.P), ("Q", self.Q)):
            out[f"{name}_idempotent"] = nu.op_norm(M @ M - M)
            out[f"{name}_hermitian"] = nu.op_norm(M - M.conj().T)
            out[f"{name}_trace"] = abs(np.trace(M).real - self.n)
        out["P_kernels"] = nu.op_norm((I - self.P) @ self.C[:, : self.n] - self.C[:, : self.n])
        out["Q_kernels"] = nu.op_norm((I - self.Q) @ self.C[:, self.n :] - self.C[:, self.n :])
        return out


def _complement_projection(cols):
    q, _ = np.linalg.qr(cols)
    return np.eye(cols.shape[0]) - q @ q.conj().T


def generic_frame(space, A, B):
    A = tuple(check_points(space, A))
    B = tuple(check_points(space, B))
    if len(A) != len(B):
        raise CardinalityMismatch(f"|A| = {len(A)} but |B| = {len(B)}")
    ensure_disjoint(A, B)
    n = len(A)
    G = gram_matrix(space, A + B)
    d = np.sqrt(np.real(np.diag(G)))
    Gn = G / np.outer(d, d)
    Gn = 0.5 * (Gn + Gn.conj().T)
    ev = np.linalg.eigvalsh(Gn)
    cond = float(ev[-1] / ev[0]) if ev[0] > 0 else math.inf
    if not cond <= MAX_CONDITION:
        raise LinearlyDependentKernels(
            f"Gram condition {cond:.3g} exceeds {MAX_CONDITION:g}"
        )
    try:
        L = np.linalg.cholesky(Gn)
    except np.linalg.LinAlgError as exc:
        raise LinearlyDependentKernels("Gram matrix is not positive definite") from exc
    C = L.conj().T
    P = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    P[n:, n:] = np.eye(n)
    Q = _complement_projection(C[:, n:])
    Q = 0.5 * (Q + Q.conj().T)
    return GenericPartFrame(space, A, B, G, C, P, Q, cond, d)


def frame_from_projections(P, Q):
    """Wrap two explicit projection matrices (used for synthetic checks)."""
    P = nu.as_cmatrix(P, square=True)
    Q = nu.as_cmatrix(Q, square=True)
    if P.shape != Q.shape or P.shape[0] % 2:
        raise ValidationError("P and Q must be equal even-sized square matrices")
    n = P.shape[0] // 2
    I = np.eye(2 * n)
    C = np.hstack([_range_basis(I - P, n), _range_basis(I - Q, n)])
    return GenericPartFrame(None, tuple(range(n)), tuple(range(n, 2 * n)),
                            C.conj().T @ C, C, P, Q, math.nan, np.ones(2 * n))


def _range_basis(M, k):
    s, U, _ = nu.svd(M)
    return U[:, :k]


@dataclass(frozen=True)
class GeodesicExponent:
    X: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    lambdas: np.ndarray
    residuals: dict = field(default_factory=dict)

    @property
    def norm(self):
        return float(np.max(np.abs(self.eigenvalues))) if self.eigenvalues.size else 0.0

    def to_json(self, frame=None):
        out = {
            "lambdas": [float(x) for x in self.lambdas],
            "distance": self.norm,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
        }
        if frame is not None:
            out["condition"] = frame.condition
        return out


def _conjugate(U, M):
    return U @ M @ U.conj().T


ANGLE_GAP = 1e-9


def _canonical_basis(P):
    """Unitary ``W`` with ``W* P W = diag(0, I)``; identity when ``P`` already is."""
    m = P.shape[0]
    k = m // 2
    canon = np.zeros((m, m))
    canon[k:, k:] = np.eye(k)
    if np.array_equal(P, canon):
        return None
    _, W = np.linalg.eigh(P)
    return W


def geodesic_exponent(frame):
    """``X = 1/2 log((2Q - I)(2P - I))`` with the principal branch.

    ``X`` is assembled from the CS decomposition of an orthonormal basis of
    ``range(I-Q) ⊕ range(Q)`` split along ``range(I-P) ⊕ range(P)``: each
    principal angle ``theta_k`` rotates ``u2_k`` in ``range(P)`` towards
    ``-u1_k`` in ``range(I-P)``.  This gives the same operator as the
    logarithm but stays co-diagonal to working precision even when an angle
    approaches ``pi/2``.  Raises :class:`~rkgeo.errors.BranchAmbiguity` when
    ``pi - 2 theta_k <= 1e-9``, i.e. when the geodesic is not unique.
    """
    P, Q = frame.P, frame.Q
    m = P.shape[0]
    I = np.eye(m)
    k = m // 2
    W = _canonical_basis(P)
    Qc = Q if W is None else W.conj().T @ Q @ W
    _, V = np.linalg.eigh(0.5 * (Qc + Qc.conj().T))
    (u1, u2), theta, _ = scipy.linalg.cossin(V, p=k, q=k, separate=True)
    theta = np.asarray(theta, dtype=float)
    if np.any(np.pi - 2 * theta <= ANGLE_GAP):
        raise BranchAmbiguity(
            f"{int(np.sum(np.pi - 2 * theta <= ANGLE_GAP))} principal angle(s) at pi/2"
        )
    U1 = np.vstack([u1, np.zeros((k, k))])
    U2 = np.vstack([np.zeros((k, k)), u2])
    if W is not None:
        U1, U2 = W @ U1, W @ U2
    Xm = 1j * (U1 * theta) @ U2.conj().T
    Xm = Xm + Xm.conj().T
    # eigenpairs -+theta_k with vectors (u2 -+ i u1)/sqrt 2
    vecs = np.hstack([U2 - 1j * U1, U2 + 1j * U1]) / math.sqrt(2)
    lam = np.concatenate([-theta, theta])
    order = np.argsort(lam, kind="stable")
    lam, U = lam[order], vecs[:, order]
    top = lam[::-1][:k]
    bottom = -lam[:k]
    lambdas = np.sort(theta)[::-1]
    E = (U * np.exp(1j * lam)) @ U.conj().T
    residuals = {
        "endpoint": nu.op_norm(_conjugate(E, P) - Q),
        "codiagP": max(nu.op_norm(P @ Xm @ P), nu.op_norm((I - P) @ Xm @ (I - P))),
        "codiagQ": max(nu.op_norm(Q @ Xm @ Q), nu.op_norm((I - Q) @ Xm @ (I - Q))),
        "pairing": float(np.max(np.abs(top - bottom))) if k else 0.0,
        "distance_identity": abs(math.sin(float(np.max(np.abs(lam)))) - nu.op_norm(P - Q))
        if k else 0.0,
    }
    return GeodesicExponent(Xm, lam, U, lambdas, residuals)


def geodesic_point(exponent, frame, t):
    """``delta(t) = e^{itX} P e^{-itX}``."""
    U = exponent.eigenvectors
    V = (U * np.exp(1j * float(t) * exponent.eigenvalues)) @ U.conj().T
    D = _conjugate(V, frame.P)
    return 0.5 * (D + D.conj().T)


def geodesic_csv(exponent, frame, ts):
    """CSV rows ``t, |delta(t)-P|, |delta(t)-Q|, idempotency`` for a t-grid."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "dist_P", "dist_Q", "idempotency"])
    for t in ts:
        D = geodesic_point(exponent, frame, t)
        w.writerow([format(float(t), ".17g"),
                    format(nu.op_norm(D - frame.P), ".17g"),
                    format(nu.op_norm(D - frame.Q), ".17g"),
                    format(nu.op_norm(D @ D - D), ".17g")])
    return buf.getvalue()


def intersection_dims(space, A, B, tol=None):
    """``(dim Z_A ∩ Z_B^⊥, dim Z_A^⊥ ∩ Z_B)`` from the cross-Gram rank."""
    return geodesic_verdict(space, A, B, tol).dims


def dixmier_cosine(frame, return_residual=False):
    """``||P Q||``; optionally with ``| ||PQ|| - ||(I-P)(I-Q)|| |``."""
    I = np.eye(frame.P.shape[0])
    c = nu.op_norm(frame.P @ frame.Q)
    if return_residual:
        return c, abs(c - nu.op_norm((I - frame.P) @ (I - frame.Q)))
    return c


@dataclass(frozen=True)
class AndoIdempotent:
    E: np.ndarray
    singular_values: np.ndarray
    block_singular_values: np.ndarray
    angles: np.ndarray
    residuals: dict


def ando_idempotent(frame, exponent=None):
    """Oblique projection onto ``range(I-P)`` along ``range(I-Q)``.

    The angles are recovered from the singular values ``t`` of the
    off-diagonal block ``(I-P) E P`` as ``arccos(t / sqrt(1 + t^2))``.
    """
    P, Q = frame.P, frame.Q
    I = np.eye(P.shape[0])
    S = (I - P) + (I - Q)
    sv = nu.singular_values(S)
    if sv[-1] <= 1e-12 * sv[0]:
        raise SingularSum("(I-P) + (I-Q) is singular")
    E = np.linalg.solve(S.T, (I - P).T).T
    en = max(nu.op_norm(E), 1.0)
    n = P.shape[0] // 2
    tb = nu.singular_values((I - P) @ E @ P)[:n]
    angles = np.sort(np.arccos(tb / np.sqrt(1 + tb * tb)))[::-1]
    res = {
        # relative to ||E||, which grows like 1/sin(smallest angle)
        "idempotent": nu.op_norm(E @ E - E) / en ** 2,
        "range": nu.op_norm((I - P) @ E - E) / en,
        "kernel": nu.op_norm(E @ (I - Q)) / en,
    }
    if exponent is not None:
        res["spectral_link"] = float(np.max(np.abs(angles - exponent.lambdas))) if n else 0.0
    return AndoIdempotent(E, nu.singular_values(E), tb, angles, res)


def halmos_residual(frame, exponent):
    """Singular values of ``(I-P)(I-Q)`` against ``cos(lambda_k)``."""
    I = np.eye(frame.P.shape[0])
    n = frame.n
    s = nu.singular_values((I - frame.P) @ (I - frame.Q))[:n]
    return float(np.max(np.abs(np.sort(s) - np.sort(np.cos(exponent.lambdas))))) if n else 0.0
