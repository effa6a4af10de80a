"""Hardy-space tools: TMW bases, compressions of Blaschke multipliers,
Hankel singular values and the spectral bounds for the geodesic exponent.

Inner products of the form ``<B_A f, k_b>`` are reduced to point
evaluations ``B_A(b) f(b)``; no boundary quadrature is used.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import numerics as nu
from .blaschke import BlaschkeProduct, blaschke_eval, blaschke_values
from .errors import IllConditioned, TooLarge, ValidationError
from .gram import ensure_disjoint
from .grassmann import generic_frame, geodesic_exponent
from .kernels import SpaceSpec, check_points, gram_matrix, kernel_matrix
from .metrics import rho

__all__ = [
    "BlaschkeProduct",
    "blaschke_eval",
    "TMWBasis",
    "tmw_basis",
    "tmw_compression",
    "hankel_singular_values",
    "lemma_411_check",
    "mba_identity_check",
    "BoundRow",
    "BoundReport",
    "bound_suite",
    "HankelProbe",
    "hankel_norm_probe",
]

HARDY = SpaceSpec.hardy()
MAX_CONDITION = 1e12
MAX_PROBE = 4096


def _checked_gram(pts):
    G = gram_matrix(HARDY, pts)
    cond = np.linalg.cond(G)
    if not cond <= MAX_CONDITION:
        raise IllConditioned(f"Szego Gram condition {cond:.3g} exceeds {MAX_CONDITION:g}")
    return G


@dataclass(frozen=True)
class TMWBasis:
    """Orthonormal basis ``omega_i = B_{b_1..b_{i-1}} k_{b_i} / ||k_{b_i}||``.

    Row ``i`` of ``coeffs`` expands ``omega_i`` in ``k_{b_1}, ..., k_{b_n}``.
    """

    points: tuple
    coeffs: np.ndarray
    G: np.ndarray

    def __len__(self):
        return len(self.points)

    def values(self, z):
        """``omega_i(z_m)`` as an ``n x len(z)`` array, from the product formula."""
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        b = np.asarray(self.points)
        out = np.empty((len(b), z.size), dtype=np.complex128)
        partial = np.ones(z.size, dtype=np.complex128)
        for i, bi in enumerate(b):
            out[i] = partial * np.sqrt(1 - abs(bi) ** 2) / (1 - np.conj(bi) * z)
            partial = partial * blaschke_values([bi], z)
        return out

    def gram(self):
        # <omega_j, omega_i> = sum_m conj(c_im) omega_j(b_m)
        return self.coeffs.conj() @ self.values(np.asarray(self.points)).T

    def orthonormality_residual(self):
        return nu.op_norm(self.gram() - np.eye(len(self)))


def tmw_basis(B):
    B = tuple(check_points(HARDY, B))
    G = _checked_gram(B)
    basis = TMWBasis(B, np.zeros((0, 0)), G)
    vals = basis.values(np.asarray(B))
    # G[m, l] = k_{b_l}(b_m), so G c_i = (omega_i(b_m))_m
    coeffs = np.linalg.solve(G, vals.T).T
    return TMWBasis(B, coeffs, G)


def tmw_compression(A, B):
    """``M[i, j] = <B_A omega_j, omega_i>``; lower triangular."""
    A = tuple(check_points(HARDY, A))
    basis = tmw_basis(B)
    ensure_disjoint(A, basis.points)
    bA = blaschke_values(A, np.asarray(basis.points))
    vals = basis.values(np.asarray(basis.points))
    return basis.coeffs.conj() @ (bA[:, None] * vals.T)


def hankel_singular_values(A, B, frame=None):
    """Nonzero singular values of ``(I - P) Q`` on the generic frame."""
    f = generic_frame(HARDY, A, B) if frame is None else frame
    I = np.eye(2 * f.n)
    return nu.singular_values((I - f.P) @ f.Q)[: f.n]


def lemma_411_check(A, B, frame=None):
    """Max deviation between ``sv((I-P)(I-Q))`` and ``sqrt(1 - t^2)``."""
    f = generic_frame(HARDY, A, B) if frame is None else frame
    I = np.eye(2 * f.n)
    s = np.sort(nu.singular_values((I - f.P) @ (I - f.Q))[: f.n])
    t = nu.singular_values(tmw_compression(A, B))
    return float(np.max(np.abs(s - np.sort(np.sqrt(np.clip(1 - t * t, 0, None))))))


def mba_identity_check(A, B, frame=None):
    """Residual of ``M_{B_A} P_{K_B} M_{B_A}^* = P_{H0} - P_{K_A}`` on ``H0``.

    In frame coordinates the right side is ``P``; the left side is ``W W^*``
    where column ``j`` of ``W`` holds the coordinates of ``B_A omega_j``.
    """
    f = generic_frame(HARDY, A, B) if frame is None else frame
    basis = tmw_basis(f.B)
    nodes = np.asarray(f.A + f.B)
    vals = blaschke_values(f.A, nodes)[None, :] * basis.values(nodes)
    # with G = D C* C D (D = kernel norms) the coordinates are C^{-*} D^{-1} vals
    W = scipy.linalg.solve_triangular(f.C.conj().T, vals.T / f.scale[:, None], lower=True)
    return nu.op_norm(W @ W.conj().T - f.P)


# -- bounds ---------------------------------------------------------------------

BOUND_TOL = 1e-10
EQUALITY_TOL = 1e-8


@dataclass(frozen=True)
class BoundRow:
    name: str
    lhs: float
    rhs: float
    relation: str  # "le" or "eq"
    asserted: bool

    @property
    def slack(self):
        if self.relation == "eq":
            return -abs(self.rhs - self.lhs)
        return self.rhs - self.lhs

    @property
    def holds(self):
        tol = EQUALITY_TOL if self.relation == "eq" else BOUND_TOL
        return self.slack >= -tol


@dataclass(frozen=True)
class BoundReport:
    rows: tuple

    def failures(self):
        return [r for r in self.rows if r.asserted and not r.holds]

    def diagnostics(self):
        return [r for r in self.rows if not r.asserted]

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bound_name", "lhs", "rhs", "slack", "status"])
        for r in self.rows:
            w.writerow([r.name, format(r.lhs, ".17g"), format(r.rhs, ".17g"),
                        format(r.slack, ".17g"),
                        "asserted" if r.asserted else "diagnostic"])
        return buf.getvalue()


def bound_suite(A, B):
    """Evaluate every spectral bound on ``X_AB`` for Hardy zero sets."""
    f = generic_frame(HARDY, A, B)
    X = geodesic_exponent(f)
    A, B, n = f.A, f.B, f.n
    lam = X.lambdas
    norm_x, gamma_x = float(lam[0]), float(lam[-1])
    I = np.eye(2 * n)
    dix = nu.op_norm(f.P @ f.Q)
    s = nu.singular_values(f.P @ f.Q)[:n]
    an, bn = np.asarray(A), np.asarray(B)
    corr = np.abs(kernel_matrix(HARDY, A, B)) * np.sqrt(
        np.outer(1 - np.abs(an) ** 2, 1 - np.abs(bn) ** 2))
    bA_b = np.abs(blaschke_values(A, bn))
    bB_a = np.abs(blaschke_values(B, an))

    rows = []
    add = rows.append
    for i in range(n):
        for j in range(n):
            add(BoundRow(f"pair_corr_le_cosine[a{i},b{j}]", float(corr[i, j]), dix, "le", True))
            add(BoundRow(f"min_angle_le_pair_angle[a{i},b{j}]", gamma_x,
                         math.acos(min(corr[i, j], 1.0)), "le", True))
    add(BoundRow("cosine_complement_equality", dix,
                 nu.op_norm((I - f.P) @ (I - f.Q)), "eq", True))

    for j0 in range(n):
        witness = np.sqrt(1 - abs(bn[j0]) ** 2) * bA_b / (1 - np.conj(bn[j0]) * bn)
        scaled = np.abs(witness) * np.sqrt(1 - np.abs(bn) ** 2)
        for j in range(n):
            add(BoundRow(f"witness_lower[f{j0},b{j}]", math.asin(min(scaled[j], 1.0)),
                         norm_x, "le", True))
        add(BoundRow(f"blaschke_lower[b{j0}]", math.asin(bA_b[j0]), norm_x, "le", True))

    # the stated constant (N_a = 1) and the computed one (N_a = 1/(1-|a|^2))
    w = 1 - np.abs(an) ** 2
    add(BoundRow("min_angle_upper[stated]", gamma_x,
                 float(np.min(np.arcsin(bB_a * w))), "le", False))
    add(BoundRow("min_angle_upper[computed]", gamma_x,
                 float(np.min(np.arcsin(bB_a))), "le", False))
    for j in range(n):
        add(BoundRow(f"cosine_lower[stated,a{j}]",
                     math.sqrt(1 - (bB_a[j] * w[j]) ** 2), dix, "le", False))
        add(BoundRow(f"cosine_lower[computed,a{j}]",
                     math.sqrt(1 - bB_a[j] ** 2), dix, "le", False))
        add(BoundRow(f"rho_factorization[a{j}]", float(bB_a[j]),
                     float(np.prod([rho(b, an[j]) for b in bn])), "eq", True))

    vals = np.sort(bA_b)[::-1]
    weyl = np.sqrt(np.clip(1 - s[::-1] ** 2, 0, None))
    for m in range(1, n + 1):
        add(BoundRow(f"weyl_product[m={m}]", float(np.prod(vals[:m])),
                     float(np.prod(weyl[:m])), "le", True))
        add(BoundRow(f"weyl_sum[m={m}]", float(np.sum(vals[:m])),
                     float(np.sum(weyl[:m])), "le", True))
    add(BoundRow("weyl_product_equality", float(np.prod(vals)),
                 float(np.prod(weyl)), "eq", True))

    add(BoundRow("smallest_cosine_upper", float(s[-1]), math.sqrt(1 - vals[0] ** 2), "le", True))
    top = max(float(np.max(bA_b)), float(np.max(bB_a)))
    add(BoundRow("max_blaschke_lower", math.asin(top), norm_x, "le", True))
    return BoundReport(tuple(rows))


def weyl_chains(A, B):
    """Prefix products and sums of both sides of the Weyl chain."""
    f = generic_frame(HARDY, A, B)
    n = f.n
    s = nu.singular_values(f.P @ f.Q)[:n]
    vals = np.sort(np.abs(blaschke_values(f.A, np.asarray(f.B))))[::-1]
    weyl = np.sqrt(np.clip(1 - s[::-1] ** 2, 0, None))
    return {
        "lhs_prod": np.cumprod(vals), "rhs_prod": np.cumprod(weyl),
        "lhs_sum": np.cumsum(vals), "rhs_sum": np.cumsum(weyl),
    }


# -- Hankel norm probe --------------------------------------------------------

@dataclass(frozen=True)
class HankelProbe:
    a: complex
    N: int
    norm: float
    stated_value: float
    oracle: float

    @property
    def deviates_from_stated(self):
        return abs(self.norm - self.stated_value) > 1e-6

    def to_json(self):
        return {
            "a": [self.a.real, self.a.imag],
            "N": self.N,
            "norm": self.norm,
            "stated_value": self.stated_value,
            "rank_one_oracle": self.oracle,
            "deviates_from_stated": self.deviates_from_stated,
        }


def _largest_singular_value(H, tol=1e-15, maxiter=500, seed=0):
    v = np.random.default_rng(seed).standard_normal(H.shape[1]).astype(np.complex128)
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(maxiter):
        u = H @ v
        nu_ = np.linalg.norm(u)
        if nu_ == 0:
            return 0.0
        v = H.conj().T @ (u / nu_)
        nv = np.linalg.norm(v)
        v /= nv
        if abs(nv - est) <= tol * nv:
            return float(nv)
        est = nv
    return float(est)


def hankel_norm_probe(a, N=2048):
    """Largest singular value of the ``N x N`` Hankel matrix ``a^{i+j}``."""
    a = complex(a)
    if not abs(a) < 1:
        raise ValidationError(f"{a} not in the open disk")
    N = int(N)
    if N < 1:
        raise ValidationError("truncation must be positive")
    if N > MAX_PROBE:
        raise TooLarge(f"truncation limited to {MAX_PROBE}")
    c = a ** np.arange(2 * N - 1) if a != 0 else np.eye(1, 2 * N - 1)[0].astype(complex)
    H = scipy.linalg.hankel(c[:N], c[N - 1:])
    return HankelProbe(a, N, _largest_singular_value(H), 1.0, 1.0 / (1 - abs(a) ** 2))
