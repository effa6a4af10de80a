"""Finite Blaschke products with simple zeros.

Factors follow the normalisation ``b_a(z) = (conj(a)/|a|) (a - z)/(1 - conj(a) z)``
for ``a != 0`` and ``b_0(z) = z``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import blaschke_kernel
from .errors import OutOfDomain, PoleOnBoundaryNumerics, ValidationError


@dataclass(frozen=True)
class BlaschkeProduct:
    zeros: tuple

    def __init__(self, zeros):
        zs = tuple(complex(z) for z in zeros)
        for z in zs:
            if not abs(z) < 1:
                raise OutOfDomain(f"Blaschke zero {z} not in the open unit disk")
        if len(set(zs)) != len(zs):
            raise ValidationError("Blaschke zeros must be distinct")
        object.__setattr__(self, "zeros", zs)

    def __len__(self):
        return len(self.zeros)

    def __call__(self, z, truncation=None):
        return blaschke_eval(self, z, truncation)

    def blaschke_sum(self):
        """Partial sums of ``1 - |a_k|``."""
        return np.cumsum([1 - abs(a) for a in self.zeros])


def blaschke_values(zeros, z, pole_tol=1e-14):
    """Evaluate the product over ``zeros`` at an array of points."""
    zeros = np.ascontiguousarray(np.asarray(zeros, dtype=np.complex128).ravel())
    zarr = np.asarray(z, dtype=np.complex128)
    flat = np.ascontiguousarray(zarr.ravel())
    out, mind = blaschke_kernel(zeros, flat)
    if mind < pole_tol:
        raise PoleOnBoundaryNumerics(
            f"|1 - conj(a) z| = {mind:.3g} below {pole_tol:g}"
        )
    return np.asarray(out).reshape(zarr.shape)


def blaschke_eval(bp, z, truncation=None):
    """Value of the (possibly truncated) product at ``z``.

    ``z`` may be a scalar or array; points on the unit circle are allowed.
    """
    zeros = bp.zeros if truncation is None else bp.zeros[:truncation]
    vals = blaschke_values(zeros, z)
    if np.ndim(z) == 0:
        return complex(vals)
    return vals
