"""Finite-truncation probes for infinite zero sets in the Hardy space.

Nothing here decides an infinite-dimensional statement.  Every output is a
number computed on a truncation, and boundary sup-norms are grid estimates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .blaschke import blaschke_values
from .errors import (
    AlphaDegenerate,
    GridTooCoarse,
    OutOfDomain,
    TooLarge,
    ValidationError,
    ZeroOnContour,
)
from .kernels import parse_point

# -- sequences ----------------------------------------------------------------

PRESETS = ("geometric", "harmonic-shifted", "explicit", "file")


@dataclass(frozen=True)
class SequenceSpec:
    """A rule producing ``a_1, ..., a_K`` in the disk.

    * ``geometric``: ``a_k = 1 - q^k`` (``q`` in ``(0, 1)``)
    * ``harmonic-shifted``: ``a_k = 1 - 1 / (k + shift)``
    * ``explicit``: the tuple ``points``
    * ``file``: one point literal per line of ``path``
    """

    rule: str
    K: int = 20
    q: float = 0.5
    shift: float = 1.0
    points: tuple = ()
    path: str | None = None

    def __post_init__(self):
        if self.rule not in PRESETS:
            raise ValidationError(f"unknown sequence rule {self.rule!r}")
        if self.rule in ("geometric", "harmonic-shifted") and self.K < 1:
            raise ValidationError("truncation K must be positive")
        if self.rule == "geometric" and not 0 < self.q < 1:
            raise ValidationError("geometric ratio must lie in (0, 1)")
        if self.rule == "harmonic-shifted" and not self.shift > 0:
            raise ValidationError("shift must be positive")

    @classmethod
    def geometric(cls, K=20, q=0.5):
        return cls("geometric", K=int(K), q=float(q))

    @classmethod
    def harmonic_shifted(cls, K=20, shift=1.0):
        return cls("harmonic-shifted", K=int(K), shift=float(shift))

    @classmethod
    def explicit(cls, points):
        pts = tuple(complex(p) for p in points)
        return cls("explicit", K=len(pts), points=pts)

    @classmethod
    def from_file(cls, path):
        lines = Path(path).read_text().splitlines()
        pts = tuple(parse_point(s) for s in lines if s.strip() and not s.lstrip().startswith("#"))
        return cls("file", K=len(pts), points=pts, path=str(path))

    def points_list(self):
        k = np.arange(1, self.K + 1, dtype=float)
        if self.rule == "geometric":
            pts = 1 - self.q ** k
        elif self.rule == "harmonic-shifted":
            pts = 1 - 1 / (k + self.shift)
        else:
            pts = np.asarray(self.points, dtype=np.complex128)
        pts = np.asarray(pts, dtype=np.complex128)
        if np.any(np.abs(pts) >= 1):
            raise OutOfDomain("sequence leaves the open unit disk")
        if len(set(pts.tolist())) != len(pts):
            raise ValidationError("sequence points must be distinct")
        return pts


def blaschke_condition(seq):
    """Partial sums of ``1 - |a_k|``."""
    pts = seq.points_list() if isinstance(seq, SequenceSpec) else np.asarray(seq)
    return np.cumsum(1 - np.abs(pts))


# -- boundary sup-norm estimates ------------------------------------------------

BASE_GRID = 4096
MAX_GRID = 1 << 18
AGREEMENT = 0.01


def _clustered_angles(center, width, m):
    """``m`` uniform angles plus ``m`` angles clustered at ``center`` with scale ``width``."""
    uni = np.linspace(-np.pi, np.pi, m, endpoint=False)
    umax = np.arcsinh(np.pi / width)
    u = np.linspace(-umax, umax, m + 1)
    clustered = width * np.sinh(u)
    return np.sort(np.concatenate([uni, clustered])) + center


def _factor(c, z):
    if c == 0:
        return z
    return (np.conj(c) / abs(c)) * (c - z) / (1 - np.conj(c) * z)


def boundary_sup(fn, center, width, m=BASE_GRID):
    """Doubling estimate of ``max |fn(e^{i theta})|``.

    Samples are clustered around ``center`` at scale ``width``; the grid is
    doubled until two successive estimates agree to 1%.
    """
    prev = None
    while m <= MAX_GRID:
        th = _clustered_angles(center, width, m)
        est = float(np.max(np.abs(fn(np.exp(1j * th)))))
        if prev is not None and abs(est - prev) <= AGREEMENT * max(est, prev):
            return est, th
        prev = est
        m *= 2
    raise GridTooCoarse("boundary sup-norm estimate did not stabilise")


@dataclass(frozen=True)
class GSPairStep:
    k: int
    a: complex
    b: complex
    eps: float
    eps_cap: float
    halvings: int
    sup_diff: float
    sup_ratio: float
    F2_dev: float
    F2_bound: float
    F3_dev: float
    F3_bound: float

    @property
    def meets_target(self):
        return self.sup_diff <= 2.0 ** (-self.k)


@dataclass(frozen=True)
class GSPair:
    A: np.ndarray
    B: np.ndarray
    steps: tuple

    def to_json(self):
        return [
            {
                "k": s.k,
                "a": [s.a.real, s.a.imag],
                "b": [s.b.real, s.b.imag],
                "eps": s.eps,
                "sup_diff_estimate": s.sup_diff,
                "target": 2.0 ** (-s.k),
                "sup_ratio_estimate": s.sup_ratio,
                "F2_dev": s.F2_dev,
                "F2_bound": s.F2_bound,
                "F3_dev": s.F3_dev,
                "F3_bound": s.F3_bound,
            }
            for s in self.steps
        ]


def guillory_sarason_pair(A, grid_size=BASE_GRID, max_halvings=200):
    """Pair each ``a_k`` with ``b_k = a_k + eps_k`` so that factors agree on the circle.

    ``eps_k`` starts at half of ``min(dist(a_k, A \\ {a_k}), (1-|a_k|)^2,
    eps_{k-1})`` and is halved until the grid estimate of
    ``sup |b_k - a_k|`` on the circle is at most ``2^-k``.
    """
    pts = A.points_list() if isinstance(A, SequenceSpec) else np.asarray(A, dtype=np.complex128)
    if np.any(pts == 0):
        raise ValidationError("the construction needs nonzero points")
    partial = np.cumsum(1 - np.abs(pts))
    if not np.isfinite(partial[-1]):
        raise ValidationError("Blaschke sums are not finite")
    steps = []
    bs = []
    prev_eps = math.inf
    for idx, a in enumerate(pts):
        k = idx + 1
        d = 1 - abs(a)
        others = np.delete(pts, idx)
        sep = float(np.min(np.abs(others - a))) if others.size else math.inf
        cap = min(sep, d * d, prev_eps)
        eps = 0.5 * cap
        center, width = cmath.phase(a), max(d, 1e-15)
        halvings = 0
        while True:
            b = a + eps
            diff, th = boundary_sup(lambda z: _factor(b, z) - _factor(a, z),
                                    center, width, grid_size)
            if diff <= 2.0 ** (-k):
                break
            if halvings >= max_halvings:
                raise GridTooCoarse(f"could not meet 2^-{k} at k = {k}")
            eps *= 0.5
            halvings += 1
        z = np.exp(1j * th)
        ratio = float(np.max(np.abs(_factor(b, z) / _factor(a, z) - 1)))
        F2 = float(np.max(np.abs((b - z) / (a - z) - 1)))
        F3 = float(np.max(np.abs((1 - np.conj(a) * z) / (1 - np.conj(b) * z) - 1)))
        steps.append(GSPairStep(k, complex(a), complex(b), eps, cap, halvings, diff,
                                ratio, F2, d, F3, d / (1 - d)))
        bs.append(b)
        prev_eps = eps
    return GSPair(pts, np.asarray(bs, dtype=np.complex128), tuple(steps))


def telescope_check(A, B, m=BASE_GRID):
    """Max over a circle grid of ``|prod x_j - prod y_j| - sum |x_j - y_j|``.

    ``x_j, y_j`` are the factor values of ``B`` and ``A``; a nonpositive
    result confirms the product-versus-sum estimate on the grid.
    """
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    th = np.linspace(0, 2 * np.pi, m, endpoint=False)
    for c in np.concatenate([A, B]):
        th = np.concatenate([th, cmath.phase(c) + (1 - abs(c)) * np.linspace(-8, 8, 65)])
    z = np.exp(1j * th)
    xs = np.array([_factor(c, z) for c in B])
    ys = np.array([_factor(c, z) for c in A])
    lhs = np.abs(np.prod(xs, axis=0) - np.prod(ys, axis=0))
    rhs = np.sum(np.abs(xs - ys), axis=0)
    return float(np.max(lhs - rhs))


# -- winding index ------------------------------------------------------------

CONTOUR_TOL = 1e-12
MAX_STEP = np.pi / 4
MAX_WINDING_POINTS = 1 << 22


@dataclass(frozen=True)
class IndexReport:
    radii: tuple
    windings: tuple
    raw: tuple
    samples: tuple
    index: int | None

    @property
    def stable(self):
        return self.index is not None

    def to_json(self):
        return {
            "radii": list(self.radii),
            "windings": list(self.windings),
            "samples": list(self.samples),
            "index": self.index,
            "stable": self.stable,
        }


def _ratio(A, B, z):
    num = blaschke_values(B, z) if len(B) else np.ones_like(z)
    den = blaschke_values(A, z) if len(A) else np.ones_like(z)
    if np.min(np.abs(num)) < CONTOUR_TOL or np.min(np.abs(den)) < CONTOUR_TOL:
        raise ZeroOnContour("B_B / B_A vanishes or blows up on the contour")
    return num / den


def _seed_angles(zeros, r, m):
    th = [np.linspace(0, 2 * np.pi, m, endpoint=False)]
    offsets = np.concatenate([[0.0], 2.0 ** np.arange(-4, 12)])
    offsets = np.concatenate([-offsets[::-1], offsets])
    for c in zeros:
        w = max(abs(r - abs(c)), 1e-15) / r
        th.append(np.mod(cmath.phase(c) + w * offsets, 2 * np.pi))
    th = np.unique(np.concatenate(th))
    return th


def winding_number(A, B, r, m=1024):
    """Winding of ``(B_B / B_A)(r e^{i theta})`` around 0 and the sample count.

    Intervals whose argument increment reaches ``pi/4`` are bisected until
    none remains.
    """
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    th = _seed_angles(np.concatenate([A, B]), r, m)
    th = np.append(th, th[0] + 2 * np.pi)
    h = _ratio(A, B, r * np.exp(1j * th))
    while True:
        steps = np.angle(h[1:] / h[:-1])
        bad = np.nonzero(np.abs(steps) >= MAX_STEP)[0]
        if bad.size == 0:
            break
        if th.size + bad.size > MAX_WINDING_POINTS:
            raise GridTooCoarse("winding grid refinement exceeded its budget")
        mids = 0.5 * (th[bad] + th[bad + 1])
        hm = _ratio(A, B, r * np.exp(1j * mids))
        th = np.insert(th, bad + 1, mids)
        h = np.insert(h, bad + 1, hm)
    total = float(np.sum(steps)) / (2 * np.pi)
    return total, th.size - 1


def winding_index(A, B, radii):
    """Winding numbers of ``B_B / B_A`` on circles of the given radii.

    ``index`` is the common value on the two largest radii (or the single
    value when one radius is given); ``None`` flags an unstable report.
    """
    radii = tuple(float(r) for r in radii)
    if not radii or any(not 0 < r < 1 for r in radii):
        raise ValidationError("radii must lie in (0, 1)")
    raw, wind, samples = [], [], []
    for r in radii:
        w, n = winding_number(A, B, r)
        if abs(w - round(w)) > 0.1:
            raise GridTooCoarse(f"winding {w:.4f} is not near an integer")
        raw.append(w)
        wind.append(int(round(w)))
        samples.append(n)
    order = np.argsort(radii)
    tail = [wind[i] for i in order[-2:]]
    index = tail[-1] if len(set(tail)) == 1 else None
    return IndexReport(radii, tuple(wind), tuple(raw), tuple(samples), index)


# -- Koosis zero sets ---------------------------------------------------------

def psi(a, z):
    """Singular inner function ``exp(a (z + 1) / (z - 1))``."""
    z = np.asarray(z, dtype=np.complex128)
    return np.exp(a * (z + 1) / (z - 1))


def koosis_zeros(a, gamma, k_range):
    """Solutions of ``psi_a(z) = gamma`` indexed by ``k`` in ``k_range``.

    Returns ``(ks, zs)``.
    """
    a = float(a)
    gamma = complex(gamma)
    if not a > 0:
        raise ValidationError("a must be positive")
    if not 0 < abs(gamma) < 1:
        raise ValidationError("gamma must satisfy 0 < |gamma| < 1")
    alpha = cmath.phase(gamma)
    if abs(alpha - round(alpha / math.pi) * math.pi) <= 1e-12:
        raise AlphaDegenerate(f"arg(gamma) = {alpha!r} is a multiple of pi")
    ks = np.asarray(list(k_range), dtype=int)
    lg = math.log(abs(gamma))
    u = alpha + 2 * np.pi * ks
    zs = (u - 1j * (a + lg)) / (u + 1j * (a - lg))
    return ks, zs


def koosis_residuals(a, gamma, zs):
    return np.abs(psi(a, zs) - complex(gamma))


# -- compactness diagnostics --------------------------------------------------

MAX_COMPACTNESS = 500


def carleson_constant(B):
    """``min_j prod_{k != j} rho(b_j, b_k)`` over a finite set."""
    B = np.asarray(B, dtype=np.complex128)
    rho = np.abs((B[:, None] - B[None, :]) / (1 - np.conj(B)[:, None] * B[None, :]))
    np.fill_diagonal(rho, 1.0)
    return float(np.min(np.prod(rho, axis=1)))


@dataclass(frozen=True)
class CompactnessReport:
    values: np.ndarray
    lp_partial_sums: dict
    carleson: float

    def to_json(self):
        return {
            "values": [float(v) for v in self.values],
            "lp_partial_sums": {str(p): [float(x) for x in s]
                                for p, s in self.lp_partial_sums.items()},
            "carleson_constant": self.carleson,
        }


def compactness_diagnostics(A, B, p_list=(1, 2)):
    """``|B_A(b_j)|``, their ``l^p`` partial sums and the Carleson constant of ``B``."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if max(A.size, B.size) > MAX_COMPACTNESS:
        raise TooLarge(f"truncations limited to {MAX_COMPACTNESS} points")
    vals = np.abs(blaschke_values(A, B))
    sums = {p: np.cumsum(vals ** p) for p in p_list}
    return CompactnessReport(vals, sums, carleson_constant(B))


def _log_first_factor(t):
    # |b| (1 - f) / (1 - |b|^2 f) with f = 1 - g, g = exp(-1/(t-1)^2)
    e = -1.0 / (t - 1) ** 2
    g = np.exp(e)
    return np.log(t) + e - np.log(1 - t * t + t * t * g)


@dataclass(frozen=True)
class RapidPairReport:
    moduli: np.ndarray
    log_first: np.ndarray
    log_ratio: dict
    other_factors: np.ndarray


def rapid_pair_report(B, powers=(1, 2, 3, 4)):
    """Pair ``b_n`` with ``a_n = f(|b_n|) b_n``, ``f(t) = 1 - exp(-1/(t-1)^2)``.

    Reports ``log`` of the modulus of the ``n``-th factor of ``B_B(a_n)``
    (computed without forming ``b_n - a_n``), its log-ratio against
    ``(1 - |b_n|)^p`` and the modulus of the remaining factors.
    """
    B = np.asarray(B, dtype=np.complex128)
    t = np.abs(B)
    if np.any(t == 0) or np.any(t >= 1):
        raise OutOfDomain("points must satisfy 0 < |b| < 1")
    logf = _log_first_factor(t)
    a = (1 - np.exp(-1.0 / (t - 1) ** 2)) * B
    rest = np.empty(B.size)
    for n in range(B.size):
        others = np.delete(B, n)
        rest[n] = float(np.prod(np.abs((others - a[n]) / (1 - np.conj(others) * a[n]))))
    ratios = {p: logf - p * np.log(1 - t) for p in powers}
    return RapidPairReport(t, logf, ratios, rest)
