"""Point metrics induced by a reproducing kernel.

With ``c = |<k_a, k_b>| / (||k_a|| ||k_b||)``:

* ``gamma  = arccos c`` (the Grassmann distance between ``Z_a`` and ``Z_b``)
* ``delta  = sqrt(1 - c^2)``
* ``delta_hat = sqrt(1 - c)``

For the disk spaces with closed forms, ``1 - c^2`` is evaluated without
cancellation so that nearby points keep full relative accuracy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import numerics as nu
from .errors import NumericalContradiction, OutOfDomain, ValidationError
from .kernels import BARGMANN, BERGMAN, HARDY, check_point, normalized_correlation

SCHATTEN_PS = (1, 2, 4)


def rho(a, b):
    """Pseudo-hyperbolic distance ``|a - b| / |1 - conj(a) b|`` on the disk."""
    a, b = complex(a), complex(b)
    if not (abs(a) < 1 and abs(b) < 1):
        raise OutOfDomain("pseudo-hyperbolic distance needs points of the open disk")
    return abs(a - b) / abs(1 - a.conjugate() * b)


def _corr_pair(space, a, b):
    """``(c, 1 - c^2)`` with the second entry computed stably when possible."""
    v = space.variant
    if v == HARDY:
        r2 = rho(check_point(space, a), check_point(space, b)) ** 2
        return math.sqrt(1 - r2), r2
    if v == BERGMAN:
        r2 = rho(check_point(space, a), check_point(space, b)) ** 2
        return 1 - r2, r2 * (2 - r2)
    if v == BARGMANN:
        d2 = abs(check_point(space, a) - check_point(space, b)) ** 2
        return math.exp(-0.5 * d2), -math.expm1(-d2)
    c = normalized_correlation(space, a, b)
    return c, max(0.0, 1 - c * c)


def correlation(space, a, b):
    return min(max(_corr_pair(space, a, b)[0], 0.0), 1.0)


def gamma(space, a, b):
    """Grassmann distance ``arccos c`` in ``[0, pi/2]``."""
    c, s2 = _corr_pair(space, a, b)
    c = min(max(c, 0.0), 1.0)
    return math.atan2(math.sqrt(s2), c)


# the Fubini-Study length metric coincides with gamma
kobayashi = gamma


def delta(space, a, b):
    return math.sqrt(_corr_pair(space, a, b)[1])


def delta_hat(space, a, b):
    c, s2 = _corr_pair(space, a, b)
    c = min(max(c, 0.0), 1.0)
    return math.sqrt(s2 / (1 + c))


METRICS = {
    "gamma": gamma,
    "delta": delta,
    "deltahat": delta_hat,
}


def closed_form_gamma(space, a, b):
    """Explicit formula for gamma on the Hardy, Bergman and Bargmann spaces."""
    v = space.variant
    if v == HARDY:
        return math.asin(rho(a, b))
    if v == BERGMAN:
        return 2 * math.asin(rho(a, b) / math.sqrt(2))
    if v == BARGMANN:
        return math.acos(math.exp(-0.5 * abs(complex(a) - complex(b)) ** 2))
    raise ValidationError(f"no closed form for {space.variant}")


def projection_norm_check(space, a, b, tol=1e-10):
    """Compare ``||P_a - P_b||`` and its Schatten norms with ``delta(a, b)``.

    Returns a dict with the operator norm, the Schatten norms keyed by ``p``,
    the singular values of ``P - Q`` and the worst deviation.  Raises
    :class:`NumericalContradiction` if a deviation exceeds ``tol``.
    """
    from .grassmann import generic_frame

    f = generic_frame(space, [a], [b])
    s = nu.singular_values(f.P - f.Q)
    d = delta(space, a, b)
    schatten = {p: float(np.sum(s ** p) ** (1.0 / p)) for p in SCHATTEN_PS}
    devs = [abs(s[0] - d)] + [abs(2 ** (-1.0 / p) * schatten[p] - d) for p in SCHATTEN_PS]
    out = {
        "op_norm": float(s[0]),
        "schatten": schatten,
        "singular_values": [float(x) for x in s],
        "delta": d,
        "max_deviation": float(max(devs)),
    }
    if out["max_deviation"] > tol:
        raise NumericalContradiction(
            f"projection norms deviate from delta by {out['max_deviation']:.3g}"
        )
    return out


@dataclass(frozen=True)
class MoebiusMap:
    """``phi(z) = w (a - z) / (1 - conj(a) z)``."""

    a: complex
    w: complex = 1.0

    def __post_init__(self):
        a, w = complex(self.a), complex(self.w)
        if not abs(a) < 1:
            raise OutOfDomain(f"Moebius parameter {a} not in the disk")
        if abs(abs(w) - 1) > 1e-14:
            raise ValidationError(f"rotation factor {w} is not unimodular")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "w", w)

    @classmethod
    def from_angle(cls, a, theta):
        return cls(a, cmath.exp(1j * theta))

    def __call__(self, z):
        return moebius_apply(self, z)


def moebius_apply(m, z):
    z = complex(z)
    if not abs(z) < 1:
        raise OutOfDomain(f"{z} not in the open disk")
    return m.w * (m.a - z) / (1 - m.a.conjugate() * z)


def moebius_invariance_check(space, m, z1, z2):
    """``|gamma(phi z1, phi z2) - gamma(z1, z2)|``; Hardy and Bergman only."""
    if space.variant not in (HARDY, BERGMAN):
        raise ValidationError("Moebius invariance is only defined for Hardy and Bergman")
    return abs(gamma(space, m(z1), m(z2)) - gamma(space, z1, z2))


def gamma_n(space, A, B):
    """Norm of the geodesic exponent between ``Z_A`` and ``Z_B``."""
    from .grassmann import generic_frame, geodesic_exponent

    return geodesic_exponent(generic_frame(space, A, B)).norm
