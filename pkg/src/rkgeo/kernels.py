"""Reproducing kernel Hilbert spaces and their kernels.

A :class:`SpaceSpec` names one space.  Points are plain Python values:
``complex`` on the disk or plane, ``float`` on the real line and a tuple of
``complex`` on the unit ball of C^n.  ``kernel_eval(space, w, z)`` returns
``k_w(z) = <k_w, k_z>``, so ``<k_w, k_z> = kernel_eval(space, w, z)`` is
linear in the first slot's *function* and conjugate-symmetric in the points.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln

from .blaschke import BlaschkeProduct, blaschke_values
from .errors import (
    NoConvergence,
    OutOfDomain,
    SeriesDivergence,
    ValidationError,
    ZeroKernel,
)

HARDY = "hardy"
BERGMAN = "bergman"
BARGMANN = "bargmann"
WEIGHTED_HARDY = "weighted_hardy"
SHIFT_INVARIANT = "shift_invariant"
DRURY_ARVESON = "drury_arveson"
SOBOLEV = "sobolev"

VARIANTS = (HARDY, BERGMAN, BARGMANN, WEIGHTED_HARDY, SHIFT_INVARIANT,
            DRURY_ARVESON, SOBOLEV)

ZERO_KERNEL_TOL = 1e-28
_SERIES_REL = 1e-17
_SERIES_CHUNK = 4096
_SERIES_MAX_TERMS = 1 << 26


# -- weighted Hardy weights -------------------------------------------------

def _log_beta_unit(n):
    return np.zeros(n.shape)


def _log_beta_bergman(n):
    return -0.5 * np.log1p(n)


def _log_beta_bargmann(n):
    return 0.5 * gammaln(n + 1.0)


def _log_beta_linear(n):
    return np.log1p(n)


@dataclass(frozen=True)
class WeightRule:
    """Positive weights ``beta_n``: explicit ``head`` values, then ``tail``.

    ``log_beta`` maps an integer array ``n`` to ``log(beta_n)``; ``head``
    overrides the first ``len(head)`` weights.
    """

    name: str
    log_beta: Callable = field(compare=False)
    head: tuple = ()

    def log_weights(self, n):
        n = np.asarray(n)
        out = np.asarray(self.log_beta(n.astype(float)), dtype=float)
        if self.head:
            mask = n < len(self.head)
            if np.any(mask):
                out = out.copy()
                out[mask] = np.log(np.asarray(self.head, dtype=float)[n[mask]])
        return out

    @classmethod
    def from_callable(cls, beta, name="custom", head=()):
        """Wrap a vectorised ``beta(n) -> beta_n`` rule."""
        return cls(name, lambda n: np.log(np.asarray(beta(n), dtype=float)), tuple(head))


WEIGHT_PRESETS = {
    "unit": WeightRule("unit", _log_beta_unit),
    "bergman": WeightRule("bergman", _log_beta_bergman),
    "bargmann": WeightRule("bargmann", _log_beta_bargmann),
    "n+1": WeightRule("n+1", _log_beta_linear),
}


# -- the space ----------------------------------------------------------------

@dataclass(frozen=True)
class SpaceSpec:
    variant: str
    weights: WeightRule | None = None
    radius: float = 1.0
    theta: BlaschkeProduct | None = None
    dim: int = 1

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValidationError(f"unknown space variant {self.variant!r}")
        if self.variant == WEIGHTED_HARDY:
            if self.weights is None:
                raise ValidationError("weighted Hardy space needs a weight rule")
            if not self.radius > 0:
                raise ValidationError("radius must be positive")
            if self.weights.head and min(self.weights.head) <= 0:
                raise ValidationError("weights must be strictly positive")
        if self.variant == SHIFT_INVARIANT and self.theta is None:
            raise ValidationError("shift-invariant space needs theta")
        if self.variant == DRURY_ARVESON and self.dim < 1:
            raise ValidationError("Drury-Arveson dimension must be >= 1")

    @classmethod
    def hardy(cls):
        return cls(HARDY)

    @classmethod
    def bergman(cls):
        return cls(BERGMAN)

    @classmethod
    def bargmann(cls):
        return cls(BARGMANN)

    @classmethod
    def sobolev(cls):
        return cls(SOBOLEV)

    @classmethod
    def drury_arveson(cls, n):
        return cls(DRURY_ARVESON, dim=int(n))

    @classmethod
    def shift_invariant(cls, theta):
        if not isinstance(theta, BlaschkeProduct):
            theta = BlaschkeProduct(theta)
        return cls(SHIFT_INVARIANT, theta=theta)

    @classmethod
    def weighted_hardy(cls, weights="n+1", radius=1.0, head=()):
        if isinstance(weights, str):
            rule = WEIGHT_PRESETS[weights]
            if head:
                rule = WeightRule(rule.name, rule.log_beta, tuple(head))
        elif isinstance(weights, WeightRule):
            rule = weights
        else:
            rule = WeightRule.from_callable(weights, head=head)
        return cls(WEIGHTED_HARDY, weights=rule, radius=float(radius))

    @property
    def domain(self):
        return {
            BARGMANN: "plane",
            DRURY_ARVESON: "ball",
            SOBOLEV: "line",
        }.get(self.variant, "disk")

    def label(self):
        if self.variant == WEIGHTED_HARDY:
            return f"{self.variant}[{self.weights.name}, R={self.radius:g}]"
        if self.variant == SHIFT_INVARIANT:
            return f"{self.variant}[{len(self.theta)} zeros]"
        if self.variant == DRURY_ARVESON:
            return f"{self.variant}[n={self.dim}]"
        return self.variant


# -- points ---------------------------------------------------------------------

def check_point(space, p):
    """Canonicalise ``p`` for ``space`` and validate that it lies in the domain."""
    dom = space.domain
    if dom == "ball":
        v = tuple(complex(c) for c in np.atleast_1d(p))
        if len(v) != space.dim:
            raise OutOfDomain(f"expected a point of C^{space.dim}, got {len(v)} coordinates")
        if not sum(abs(c) ** 2 for c in v) < 1:
            raise OutOfDomain(f"{v} not in the open unit ball")
        return v
    if dom == "line":
        c = complex(p)
        if c.imag != 0 or not math.isfinite(c.real):
            raise OutOfDomain(f"{p} is not a real number")
        return float(c.real)
    z = complex(p)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise OutOfDomain(f"{p} is not finite")
    if dom == "disk":
        r = space.radius if space.variant == WEIGHTED_HARDY else 1.0
        if not abs(z) < r:
            raise OutOfDomain(f"{z} not in the open disk of radius {r:g}")
    return z


def check_points(space, pts):
    out = [check_point(space, p) for p in pts]
    if not out:
        raise ValidationError("point set must be nonempty")
    if len(set(out)) != len(out):
        raise ValidationError("points must be pairwise distinct")
    return out


_REAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_POINT_RE = re.compile(rf"^\s*({_REAL})\s*(?:,\s*({_REAL})\s*)?$")


def parse_point(text):
    """Parse a point literal.

    ``"re,im"`` or ``"re"`` give a complex scalar; ``"[c1, c2, ...]"`` gives a
    vector whose components are Python complex literals (``0.1+0.2j``).
    """
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValidationError(f"unterminated vector literal {text!r}")
        body = s[1:-1].strip()
        if not body:
            raise ValidationError("empty vector literal")
        try:
            return tuple(complex(part.strip().replace(" ", "")) for part in body.split(","))
        except ValueError as exc:
            raise ValidationError(f"bad vector literal {text!r}") from exc
    m = _POINT_RE.match(s)
    if not m:
        raise ValidationError(f"bad point literal {text!r}; expected 're,im' or 're'")
    return complex(float(m.group(1)), float(m.group(2) or 0.0))


def format_point(p):
    if isinstance(p, tuple):
        return "[" + ", ".join(repr(complex(c)) for c in p) + "]"
    c = complex(p)
    return f"{c.real!r},{c.imag!r}"


# -- kernel evaluation --------------------------------------------------------

def _weighted_series(rule, x):
    """``sum_n x^n / beta_n^2`` with termwise truncation."""
    if x == 0:
        return complex(math.exp(-2 * rule.log_weights(np.array([0]))[0]))
    logx = complex(np.log(complex(x)))
    total = 0j
    mag = 0.0
    start = 0
    while start < _SERIES_MAX_TERMS:
        n = np.arange(start, start + _SERIES_CHUNK)
        logt = n * logx - 2.0 * rule.log_weights(n)
        terms = np.exp(logt)
        total += terms.sum()
        absterms = np.abs(terms)
        mag += absterms.sum()
        if absterms[-1] < _SERIES_REL * mag and absterms[-1] <= absterms[-2]:
            return complex(total)
        start += _SERIES_CHUNK
    raise NoConvergence("weighted Hardy series did not converge")


def kernel_eval(space, w, z):
    """``k_w(z)`` for the given space."""
    w = check_point(space, w)
    z = check_point(space, z)
    return _kernel_raw(space, w, z)


def _kernel_raw(space, w, z):
    v = space.variant
    if v == HARDY:
        return 1.0 / (1.0 - w.conjugate() * z)
    if v == BERGMAN:
        return 1.0 / (1.0 - w.conjugate() * z) ** 2
    if v == BARGMANN:
        return complex(np.exp(z * w.conjugate()))
    if v == SHIFT_INVARIANT:
        th = blaschke_values(space.theta.zeros, np.array([z, w]))
        return complex(th[0] * th[1].conjugate() / (1.0 - z * w.conjugate()))
    if v == DRURY_ARVESON:
        s = sum(zj * wj.conjugate() for zj, wj in zip(z, w))
        return 1.0 / (1.0 - s)
    if v == SOBOLEV:
        return complex(math.exp(-abs(z - w)))
    if v == WEIGHTED_HARDY:
        x = w.conjugate() * z
        if abs(x) >= space.radius ** 2:
            raise SeriesDivergence(f"|conj(w) z| = {abs(x):.6g} >= R^2")
        return _weighted_series(space.weights, x)
    raise ValidationError(f"unknown variant {v!r}")


def kernel_matrix(space, ws, zs):
    """Matrix ``M[i, j] = k_{ws[i]}(zs[j])``."""
    ws = [check_point(space, p) for p in ws]
    zs = [check_point(space, p) for p in zs]
    v = space.variant
    if v in (HARDY, BERGMAN, BARGMANN, SHIFT_INVARIANT):
        wa = np.asarray(ws, dtype=np.complex128)
        za = np.asarray(zs, dtype=np.complex128)
        prod = np.outer(wa.conj(), za)
        if v == HARDY:
            return 1.0 / (1.0 - prod)
        if v == BERGMAN:
            return 1.0 / (1.0 - prod) ** 2
        if v == BARGMANN:
            return np.exp(prod)
        tw = blaschke_values(space.theta.zeros, wa)
        tz = blaschke_values(space.theta.zeros, za)
        return np.outer(tw.conj(), tz) / (1.0 - prod)
    if v == DRURY_ARVESON:
        wa = np.asarray(ws, dtype=np.complex128).reshape(len(ws), space.dim)
        za = np.asarray(zs, dtype=np.complex128).reshape(len(zs), space.dim)
        return 1.0 / (1.0 - wa.conj() @ za.T)
    if v == SOBOLEV:
        wa = np.asarray(ws, dtype=float)
        za = np.asarray(zs, dtype=float)
        return np.exp(-np.abs(wa[:, None] - za[None, :])).astype(np.complex128)
    out = np.empty((len(ws), len(zs)), dtype=np.complex128)
    for i, w in enumerate(ws):
        for j, z in enumerate(zs):
            out[i, j] = _kernel_raw(space, w, z)
    return out


def gram_matrix(space, pts):
    """Hermitian Gram matrix ``G[i, j] = <k_{p_j}, k_{p_i}> = k_{p_j}(p_i)``."""
    g = kernel_matrix(space, pts, pts).T
    return 0.5 * (g + g.conj().T)


def kernel_norm(space, w):
    val = kernel_eval(space, w, w).real
    if val <= ZERO_KERNEL_TOL:
        raise ZeroKernel(f"k_w(w) = {val:.3g} vanishes at w = {w}")
    return math.sqrt(val)


def normalized_correlation(space, a, b):
    """``|<k_a, k_b>| / (||k_a|| ||k_b||)`` clamped to ``[0, 1]``."""
    na = kernel_norm(space, a)
    nb = kernel_norm(space, b)
    c = abs(kernel_eval(space, a, b)) / (na * nb)
    return min(max(c, 0.0), 1.0)


def boundary_decay_probe(space, sequence, z):
    """Ratios ``|k_{w_n}(z)| / ||k_{w_n}||`` along a sequence of points.

    No limit is inferred; the caller inspects the trend.
    """
    return np.array(
        [abs(kernel_eval(space, w, z)) / kernel_norm(space, w) for w in sequence]
    )
