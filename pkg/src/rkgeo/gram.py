"""Cross-Gram matrices and the existence/uniqueness criterion for geodesics.

For finite disjoint point sets ``A`` and ``B`` the geodesics joining the
zero-set subspaces ``Z_A`` and ``Z_B`` are governed by the cross-Gram matrix
``K[i, j] = k_{b_i}(a_j)`` (rows indexed by ``B``, columns by ``A``).  Also
here: Cauchy/Borchardt determinant identities and the Bergman-space
constructions of vanishing determinants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import numerics as nu
from .blaschke import blaschke_values
from .errors import (
    DegenerateQuadratic,
    InsufficientInteriorRoots,
    NoInteriorRoot,
    NumericalContradiction,
    SetsIntersect,
    TooLarge,
    ValidationError,
    ZeroDenominator,
)
from .kernels import SpaceSpec, check_points, kernel_matrix

BERGMAN_DELTA = 0.195
BERGMAN_PRODUCT_BOUND = BERGMAN_DELTA / (1 + BERGMAN_DELTA)
MAX_BORCHARDT_SIZE = 12


class VerdictKind(str, enum.Enum):
    NONE = "None"
    UNIQUE = "Unique"
    INFINITELY_MANY = "InfinitelyMany"


@dataclass(frozen=True)
class CrossGram:
    space: SpaceSpec
    A: tuple
    B: tuple
    K: np.ndarray


@dataclass(frozen=True)
class GeodesicVerdict:
    """Outcome of the determinant criterion.

    ``dims = (dim Z_A ∩ Z_B^⊥, dim Z_A^⊥ ∩ Z_B)``.  ``det_value`` is ``None``
    when ``|A| != |B|``.
    """

    kind: VerdictKind
    dims: tuple
    det_value: complex | None
    condition: float
    rank: int
    nullity_K: int
    nullity_Kstar: int

    def to_json(self):
        det = None if self.det_value is None else [self.det_value.real, self.det_value.imag]
        return {
            "kind": self.kind.value,
            "dims": list(self.dims),
            "det": det,
            "condition": self.condition,
        }


def ensure_disjoint(A, B):
    common = set(A) & set(B)
    if common:
        raise SetsIntersect(f"point sets share {sorted(map(str, common))}")


def cross_gram(space, A, B):
    A = tuple(check_points(space, A))
    B = tuple(check_points(space, B))
    ensure_disjoint(A, B)
    return CrossGram(space, A, B, kernel_matrix(space, B, A))


def _condition(s):
    if len(s) == 0:
        return 1.0
    return float(s[0] / s[-1]) if s[-1] > 0 else float("inf")


PRINCIPAL_COS_TOL = 1e-9
WHITEN_MAX_CONDITION = 1e12


def _whitener(space, pts):
    """Inverse Cholesky factor of the unit-diagonal Gram of ``pts``, or ``None``."""
    G = kernel_matrix(space, pts, pts).T
    d = np.sqrt(np.real(np.diag(G)))
    if not np.all(np.isfinite(d)) or np.any(d <= 1e-14):
        # a vanishing kernel cannot be whitened; defer to the rank fallback
        return np.ones(len(pts)), None
    Gn = G / np.outer(d, d)
    Gn = 0.5 * (Gn + Gn.conj().T)
    ev = np.linalg.eigvalsh(Gn)
    if not (ev[0] > 0 and ev[-1] / ev[0] <= WHITEN_MAX_CONDITION):
        return d, None
    L = np.linalg.cholesky(Gn)
    return d, L


def principal_cosines(space, A, B):
    """Cosines of the principal angles between ``span k_A`` and ``span k_B``.

    Returns ``(s, exact)``; ``exact`` is False when a Gram matrix was too
    ill-conditioned to whiten, in which case ``s`` holds the singular values
    of the normalised cross-Gram instead.
    """
    K = kernel_matrix(space, B, A)
    dA, LA = _whitener(space, A)
    dB, LB = _whitener(space, B)
    Kn = K / np.outer(dB, dA)
    if LA is None or LB is None:
        return nu.singular_values(Kn), False
    W = scipy.linalg.solve_triangular(LB, Kn, lower=True)
    W = scipy.linalg.solve_triangular(LA.conj(), W.T, lower=True).T
    return np.clip(nu.singular_values(W), 0.0, 1.0), True


def geodesic_verdict(space, A, B, tol=None):
    """Decide None / Unique / InfinitelyMany from the numerical rank of ``K``.

    ``K`` has shape ``|B| x |A|``.  A function ``sum_i alpha_i k_{b_i}`` lies in
    ``Z_A`` iff ``K^T alpha = 0``, so ``dim Z_A ∩ Z_B^⊥ = |B| - rank`` and
    symmetrically ``dim Z_A^⊥ ∩ Z_B = |A| - rank``.

    The rank is read off the principal cosines between the two kernel spans,
    which do not depend on how the kernels are scaled; a cosine below ``tol``
    (default ``1e-9``) counts as zero.  When a Gram matrix cannot be whitened
    the normalised cross-Gram is used with a relative tolerance.
    ``condition`` is the ratio of the extreme values used.
    """
    cg = cross_gram(space, A, B)
    K = cg.K
    s, whitened = principal_cosines(space, cg.A, cg.B)
    if tol is not None:
        thresh = float(tol)
    elif whitened:
        thresh = PRINCIPAL_COS_TOL
    else:
        thresh = nu.rank_tolerance(s, K.shape)
    rank = int(np.sum(s > thresh))
    m, n = K.shape
    d10, d01 = m - rank, n - rank
    if m != n:
        kind = VerdictKind.NONE
        det = None
    else:
        det = complex(np.linalg.det(K))
        kind = VerdictKind.UNIQUE if rank == n else VerdictKind.INFINITELY_MANY
    return GeodesicVerdict(kind, (d10, d01), det, _condition(s), rank,
                           nullity_K=n - rank, nullity_Kstar=m - rank)


# -- Cauchy and Borchardt -------------------------------------------------------

def _cauchy_closed(x, y):
    """``det(1 / (x_i - y_j))`` by the Cauchy product formula."""
    n = len(x)
    diff = x[:, None] - y[None, :]
    if np.any(diff == 0):
        raise ZeroDenominator("x_i - y_j vanishes")
    num = 1.0 + 0j
    for i in range(n):
        for j in range(i + 1, n):
            num *= (x[j] - x[i]) * (y[i] - y[j])
    return num / np.prod(diff)


def cauchy_determinant(a, b):
    """Closed form of ``det(1 / (1 - a_i conj(b_j)))``.

    Uses ``1/(1 - a conj(b)) = (1/a) / (1/a - conj(b))`` when every ``a_i`` is
    nonzero and the mirrored factorisation through ``1/conj(b_j)`` otherwise.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape or a.ndim != 1:
        raise ValidationError("a and b must be equal-length 1-d sequences")
    if np.any(1 - np.outer(a, b.conj()) == 0):
        raise ZeroDenominator("1 - a_i conj(b_j) vanishes")
    if np.all(a != 0):
        return complex(np.prod(1 / a) * _cauchy_closed(1 / a, b.conj()))
    if np.all(b != 0):
        yb = 1 / b.conj()
        return complex(np.prod(-yb) * _cauchy_closed(a, yb))
    raise ZeroDenominator("both a and b contain 0; no Cauchy factorisation")


@dataclass(frozen=True)
class BorchardtResult:
    lhs: complex
    rhs: complex
    relative_error: float


def _rel_err(x, y):
    scale = max(abs(x), abs(y))
    return 0.0 if scale == 0 else abs(x - y) / scale


def borchardt_check(a, b):
    """Compare ``det(C∘C)`` with ``det(C) per(C)`` for ``C = (1/(1 - a_i conj b_j))``.

    The left side is a numerical LU determinant; on the right the Cauchy
    determinant comes from its closed form and the permanent from Ryser.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if len(a) > MAX_BORCHARDT_SIZE:
        raise TooLarge(f"Borchardt check limited to n <= {MAX_BORCHARDT_SIZE}")
    den = 1 - np.outer(a, b.conj())
    if np.any(den == 0):
        raise ZeroDenominator("1 - a_i conj(b_j) vanishes")
    c = 1 / den
    lhs = complex(np.linalg.det(c * c))
    rhs = cauchy_determinant(a, b) * nu.permanent(c)
    return BorchardtResult(lhs, rhs, _rel_err(lhs, rhs))


@dataclass(frozen=True)
class SafeRegionReport:
    guaranteed_nonzero: bool
    max_product: float
    full_rank: bool | None = None
    permanent: complex | None = None


def bergman_safe_region(A, B):
    """Check the sufficient condition ``max |a_i b_j| < 0.195/1.195``.

    When it holds, the Bergman cross-Gram must be nonsingular and the
    permanent of the Szegő cross-Gram nonzero; both are verified numerically
    and a violation raises :class:`NumericalContradiction`.
    """
    space = SpaceSpec.bergman()
    A = check_points(space, A)
    B = check_points(space, B)
    ensure_disjoint(A, B)
    a = np.asarray(A, dtype=np.complex128)
    b = np.asarray(B, dtype=np.complex128)
    mx = float(np.max(np.abs(np.outer(a, b))))
    if not mx < BERGMAN_PRODUCT_BOUND or len(a) != len(b):
        return SafeRegionReport(False, mx)
    K = kernel_matrix(space, B, A)
    full = nu.numerical_rank(K) == len(a)
    per = nu.permanent(1 / (1 - np.outer(a, b.conj())))
    if not full or per == 0:
        raise NumericalContradiction(
            "safe-region hypothesis holds but the determinant or permanent vanishes"
        )
    return SafeRegionReport(True, mx, full, per)


# -- Bergman counterexamples ------------------------------------------------------

def _sq_factor(bj):
    """Ascending coefficients of ``(1 - z conj(b))^2``."""
    f = np.array([1.0, -np.conj(bj)], dtype=np.complex128)
    return np.convolve(f, f)


def bergman_numerator(b, c):
    """Descending coefficients of the numerator of ``sum_j c_j / (1 - z conj b_j)^2``."""
    b = np.asarray(b, dtype=np.complex128)
    n = len(b)
    acc = np.zeros(2 * n - 1, dtype=np.complex128)
    for j in range(n):
        t = np.array([1.0 + 0j])
        for l in range(n):
            if l != j:
                t = np.convolve(t, _sq_factor(b[l]))
        acc[: len(t)] += c[j] * t
    return acc[::-1]


@dataclass(frozen=True)
class Counterexample:
    A: tuple
    b: tuple
    roots: tuple
    sv_ratio: float
    det: complex


def _singular_ratio(K):
    s = nu.singular_values(K)
    return float(s[-1] / s[0])


def _bergman_K(A, b):
    return kernel_matrix(SpaceSpec.bergman(), b, A)


def bergman_counterexample_from_coeffs(b, c, count=None):
    """Zeros in the disk of ``f = sum_j c_j k^B_{b_j}``.

    ``count`` (default ``len(b)``) interior roots are returned, chosen by
    increasing modulus; the Bergman cross-Gram at them is singular because
    ``f`` is a combination of the ``k_{b_j}`` vanishing at every chosen point.
    """
    space = SpaceSpec.bergman()
    b = check_points(space, b)
    c = np.asarray(c, dtype=np.complex128)
    if len(c) != len(b) or not np.any(c != 0):
        raise ValidationError("need one coefficient per point, not all zero")
    count = len(b) if count is None else count
    roots = nu.polynomial_roots(bergman_numerator(b, c))
    inside = sorted((complex(r) for r in roots if abs(r) < 1), key=abs)
    if len(inside) < count:
        raise InsufficientInteriorRoots(
            f"only {len(inside)} interior root(s), need {count}"
        )
    A = tuple(inside[:count])
    K = _bergman_K(A, b)
    return Counterexample(A, tuple(b), tuple(complex(r) for r in roots),
                          _singular_ratio(K), complex(np.linalg.det(K)))


@dataclass(frozen=True)
class CompletionResult:
    a3: complex
    quadratic: np.ndarray
    deflation_residual: float
    roots: tuple
    sv_ratio: float
    det: complex


def bergman_counterexample_complete(a1, a2, b):
    """Third point making ``det(1/(1 - a_i conj b_j)^2)`` vanish.

    With ``a3 = z`` the determinant's numerator is a degree-4 polynomial in
    ``z`` vanishing at ``a1`` and ``a2``; dividing those out leaves ``p`` of
    degree at most 2 whose interior root is returned.
    """
    space = SpaceSpec.bergman()
    b = check_points(space, b)
    if len(b) != 3:
        raise ValidationError("need exactly three b points")
    a1, a2 = check_points(space, [a1, a2])
    ensure_disjoint([a1, a2], b)
    top = 1 / (1 - np.outer([a1, a2], np.conj(b))) ** 2
    cof = np.array([
        np.linalg.det(np.delete(top, j, axis=1)) * (-1) ** (2 + j) for j in range(3)
    ])
    num = bergman_numerator(b, cof)
    quad, rem = np.polydiv(num, np.poly([a1, a2]))
    scale = float(np.max(np.abs(num)))
    resid = float(np.max(np.abs(rem))) / scale if scale else 0.0
    p = nu.trim_leading(quad, rel=1e-12)
    if p.size < 2:
        raise DegenerateQuadratic("deflated polynomial has degree < 1")
    roots = nu.polynomial_roots(p)
    inside = sorted((complex(r) for r in roots if abs(r) < 1), key=abs)
    if not inside:
        raise NoInteriorRoot(f"roots {list(roots)} all outside the disk")
    a3 = inside[0]
    K = _bergman_K([a1, a2, a3], b)
    return CompletionResult(a3, quad, resid, tuple(complex(r) for r in roots),
                            _singular_ratio(K), complex(np.linalg.det(K)))


def search_bergman_counterexample(n, seed=0, max_trials=200, radius=0.999, inner=0.9):
    """Random search for ``n``-point sets with singular Bergman cross-Gram.

    Each trial draws ``b_1..b_n`` and ``a_1..a_{n-1}`` in the annulus
    ``inner < |z| < radius`` from its own generator seeded by ``(seed, trial)``.
    The coefficient vector ``c`` spans the left null space of the
    ``n x (n-1)`` cross-Gram, so ``f = sum_j c_j k_{b_j}`` already vanishes
    at every ``a_i``; a trial succeeds when ``f`` has one more zero in the
    disk.  Points near the circle make this far more likely than Gaussian
    ``c``.
    """
    if n < 3:
        # two-point Bergman cross-Grams are always invertible
        raise ValidationError("n must be at least 3")
    if not 0 <= inner < radius < 1:
        raise ValidationError("need 0 <= inner < radius < 1")
    for trial in range(max_trials):
        rng = np.random.default_rng([seed, trial])
        m = 2 * n - 1
        pts = rng.uniform(inner, radius, size=m) * np.exp(2j * np.pi * rng.uniform(size=m))
        b, a = pts[:n], pts[n:]
        c = scipy.linalg.null_space(_bergman_K(a, b).T)
        if c.shape[1] != 1:
            continue
        roots = nu.polynomial_roots(bergman_numerator(b, c[:, 0]))
        scale = 1e-6
        extra = [complex(r) for r in roots
                 if abs(r) < 1 and np.min(np.abs(r - a)) > scale and np.min(np.abs(r - b)) > scale]
        if not extra:
            continue
        A = tuple(complex(x) for x in a) + (min(extra, key=abs),)
        K = _bergman_K(A, b)
        return trial, Counterexample(A, tuple(complex(x) for x in b),
                                     tuple(complex(r) for r in roots),
                                     _singular_ratio(K), complex(np.linalg.det(K)))
    raise InsufficientInteriorRoots(f"no configuration found in {max_trials} trials")


# -- shift-invariant subspaces -------------------------------------------------------

@dataclass(frozen=True)
class ShiftIdentityResult:
    lhs: complex
    rhs: complex
    relative_error: float


def shift_invariant_det_identity(theta, A, B):
    """``det(k^θ_{b_j}(a_i)) = prod θ(a_i) conj θ(b_i) det(k^H_{b_j}(a_i))``."""
    space = SpaceSpec.shift_invariant(theta)
    A = check_points(space, A)
    B = check_points(space, B)
    ensure_disjoint(A, B)
    if len(A) != len(B):
        raise ValidationError("A and B must have equal cardinality")
    lhs = complex(np.linalg.det(kernel_matrix(space, B, A).T))
    hardy = kernel_matrix(SpaceSpec.hardy(), B, A).T
    ta = blaschke_values(space.theta.zeros, np.asarray(A, dtype=np.complex128))
    tb = blaschke_values(space.theta.zeros, np.asarray(B, dtype=np.complex128))
    rhs = complex(np.prod(ta * tb.conj()) * np.linalg.det(hardy))
    return ShiftIdentityResult(lhs, rhs, _rel_err(lhs, rhs))


def bargmann_degenerate_pair(a1, a2, b1, k=1):
    """``b2`` with ``(a1 - a2)(conj b1 - conj b2) = 2 pi i k``.

    For such points the 2x2 cross-Gram ``(exp(a_j conj b_i))`` is singular.
    """
    a1, a2, b1 = complex(a1), complex(a2), complex(b1)
    if a1 == a2:
        raise ValidationError("a1 and a2 must differ")
    if k == 0:
        raise ValidationError("k must be nonzero")
    b2 = b1 - (2j * np.pi * k / (a1 - a2)).conjugate()
    return (a1, a2), (b1, b2)
