"""Geodesics between zero-set subspaces of reproducing kernel Hilbert spaces."""

from ._backend import BACKEND
from .blaschke import BlaschkeProduct, blaschke_eval
from .gram import GeodesicVerdict, VerdictKind, cross_gram, geodesic_verdict
from .grassmann import (
    GenericPartFrame,
    GeodesicExponent,
    ando_idempotent,
    dixmier_cosine,
    generic_frame,
    geodesic_exponent,
    geodesic_point,
    intersection_dims,
)
from .kernels import SpaceSpec, kernel_eval, kernel_norm, normalized_correlation
from .metrics import MoebiusMap, delta, delta_hat, gamma, gamma_n, rho

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BlaschkeProduct",
    "GenericPartFrame",
    "GeodesicExponent",
    "GeodesicVerdict",
    "MoebiusMap",
    "SpaceSpec",
    "VerdictKind",
    "ando_idempotent",
    "blaschke_eval",
    "cross_gram",
    "delta",
    "delta_hat",
    "dixmier_cosine",
    "gamma",
    "gamma_n",
    "generic_frame",
    "geodesic_exponent",
    "geodesic_point",
    "geodesic_verdict",
    "intersection_dims",
    "kernel_eval",
    "kernel_norm",
    "normalized_correlation",
    "rho",
]
