"""Dense complex linear algebra used throughout the package.

Every routine takes and returns plain ``numpy`` arrays (complex128 unless
stated otherwise).  Operator norms are spectral norms, i.e. the largest
singular value.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from ._backend import permanent_kernel
from .errors import (
    BranchAmbiguity,
    DegreeZero,
    NoConvergence,
    NotHermitian,
    NotUnitary,
    TooLarge,
    ValidationError,
)

EPS = np.finfo(float).eps
MAX_PERMANENT_SIZE = 14


def as_cmatrix(m, square=False):
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim != 2:
        raise ValidationError(f"expected a 2-d matrix, got shape {a.shape}")
    if square and a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    return a


def op_norm(m):
    """Spectral norm (largest singular value); 0 for empty matrices."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def rank_tolerance(s, shape, tol=None):
    """Threshold below which a singular value counts as zero.

    Defaults to ``max(rows, cols) * eps * s_max``.
    """
    if tol is not None:
        return float(tol)
    smax = float(s[0]) if len(s) else 0.0
    return max(shape) * EPS * smax


def numerical_rank(m, tol=None):
    m = np.asarray(m, dtype=np.complex128)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > rank_tolerance(s, m.shape, tol)))


def hermitian_eig(h, hermitian_tol=None):
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(lam, U)`` with ``lam`` ascending and ``U`` unitary such that
    ``H U = U diag(lam)``.
    """
    h = as_cmatrix(h, square=True)
    scale = op_norm(h)
    tol = 1e-12 * scale if hermitian_tol is None else hermitian_tol
    if h.size and np.max(np.abs(h - h.conj().T)) > tol:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    h = 0.5 * (h + h.conj().T)
    try:
        lam, u = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return lam, u


def svd(m):
    """Full SVD ``M = U diag(s) V*`` with ``s`` non-increasing.

    Returns ``(s, U, V)``; note ``V`` (not ``V*``).
    """
    m = as_cmatrix(m)
    try:
        u, s, vh = np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return s, u, vh.conj().T


def singular_values(m):
    m = np.asarray(m, dtype=np.complex128)
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def unitary_log_principal(s, angle_gap=1e-9, allow_pi=False):
    """Hermitian ``A`` with ``exp(iA) = S`` and spectrum in ``(-pi, pi]``.

    The logarithm is taken eigenvalue-wise on the complex Schur form, which
    is diagonal for normal matrices and yields orthonormal eigenvectors even
    for repeated eigenvalues.  Raises :class:`BranchAmbiguity` when an
    eigenvalue lies within ``angle_gap`` radians of -1 and ``allow_pi`` is
    unset.
    """
    s = as_cmatrix(s, square=True)
    n = s.shape[0]
    if np.linalg.norm(s.conj().T @ s - np.eye(n), 2) > 1e-10:
        raise NotUnitary("matrix is not unitary within 1e-10")
    try:
        t, z = scipy.linalg.schur(s, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NoConvergence(str(exc)) from exc
    ev = np.diag(t)
    angles = np.angle(ev)
    near_pi = np.pi - np.abs(angles) <= angle_gap
    if np.any(near_pi):
        if not allow_pi:
            raise BranchAmbiguity(
                f"{int(near_pi.sum())} eigenvalue(s) within {angle_gap:g} rad of -1"
            )
        angles = np.where(near_pi, np.pi, angles)
    a = (z * angles) @ z.conj().T
    return 0.5 * (a + a.conj().T)


def matrix_exp_i(a, t=1.0):
    """``exp(i t A)`` for Hermitian ``A``."""
    lam, u = hermitian_eig(a)
    return (u * np.exp(1j * t * lam)) @ u.conj().T


def permanent(m):
    """Permanent by Ryser's formula with Gray-code updates, O(2^n n)."""
    m = as_cmatrix(m, square=True)
    if m.shape[0] > MAX_PERMANENT_SIZE:
        raise TooLarge(f"permanent limited to n <= {MAX_PERMANENT_SIZE}")
    return complex(permanent_kernel(np.ascontiguousarray(m)))


def polyval_desc(coeffs, z):
    """Horner evaluation, coefficients in descending degree order."""
    acc = np.zeros_like(np.asarray(z, dtype=np.complex128))
    for c in coeffs:
        acc = acc * z + c
    return acc


def trim_leading(coeffs, rel=1e-14):
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    if c.size == 0:
        return c
    cutoff = rel * np.max(np.abs(c))
    nz = np.nonzero(np.abs(c) > cutoff)[0]
    if nz.size == 0:
        return c[:0]
    return c[nz[0]:]


def polynomial_roots(coeffs, polish=2):
    """Roots of a polynomial given highest-degree-first coefficients.

    Leading coefficients below ``1e-14 * max|c|`` are dropped.  Roots are the
    eigenvalues of the companion matrix followed by ``polish`` Newton steps.
    """
    c = trim_leading(coeffs)
    if c.size < 2:
        raise DegreeZero("polynomial has degree zero after trimming")
    c = c / c[0]
    deg = c.size - 1
    comp = np.zeros((deg, deg), dtype=np.complex128)
    comp[0, :] = -c[1:]
    comp[np.arange(1, deg), np.arange(deg - 1)] = 1.0
    try:
        roots = np.linalg.eigvals(comp)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    dc = c[:-1] * np.arange(deg, 0, -1)
    for _ in range(polish):
        d = polyval_desc(dc, roots)
        ok = np.abs(d) > 0
        step = np.zeros_like(roots)
        step[ok] = polyval_desc(c, roots[ok]) / d[ok]
        cand = roots - step
        better = np.abs(polyval_desc(c, cand)) < np.abs(polyval_desc(c, roots))
        roots = np.where(better, cand, roots)
    scale = polyval_desc(np.abs(c), np.abs(roots))
    resid = np.abs(polyval_desc(c, roots))
    if np.any(resid > 1e-8 * np.maximum(scale, 1.0)):
        raise NoConvergence("root residual above 1e-8 * scale")
    return roots
