"""Canned reproductions with per-check PASS/FAIL/DIAGNOSTIC status."""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import exact, gram, hardy, infinite
from .errors import ValidationError


def _check(name, value, threshold, ok, asserted=True):
    status = ("PASS" if ok else "FAIL") if asserted else "DIAGNOSTIC"
    return {"name": name, "value": float(value), "threshold": float(threshold), "status": status}


def example_2_7():
    b = [exact.to_complex(p) for p in exact.DEMO_B]
    c = [exact.to_complex(p) for p in exact.DEMO_C]
    ce = gram.bergman_counterexample_from_coeffs(b, c)
    checks = []
    for i, ref in enumerate(exact.DEMO_ROOTS):
        got = min(ce.A, key=lambda z: abs(z - ref))
        err = max(abs(got.real - ref.real), abs(got.imag - ref.imag))
        checks.append(_check(f"root{i + 1}", err, 1e-5, err <= 1e-5))
    checks.append(_check("sv_ratio", ce.sv_ratio, 1e-8, ce.sv_ratio <= 1e-8))
    a12 = [exact.to_complex(p) for p in exact.DEMO_A12]
    comp = gram.bergman_counterexample_complete(a12[0], a12[1], b)
    checks.append(_check("completion_sv_ratio", comp.sv_ratio, 1e-8, comp.sv_ratio <= 1e-8))
    checks.append(_check("completion_deflation", comp.deflation_residual, 1e-10,
                         comp.deflation_residual <= 1e-10))
    return checks


def weyl(seed=0):
    rng = np.random.default_rng(seed)
    n = 5
    r = 0.9 * np.sqrt(rng.uniform(size=2 * n))
    pts = r * np.exp(2j * np.pi * rng.uniform(size=2 * n))
    rep = hardy.bound_suite(pts[:n], pts[n:])
    checks = []
    for row in rep.rows:
        if row.name.startswith(("weyl", "max_blaschke", "blaschke_lower")):
            tol = hardy.EQUALITY_TOL if row.relation == "eq" else hardy.BOUND_TOL
            checks.append(_check(row.name, row.slack, -tol, row.holds))
    return checks


def gs_pair():
    pair = infinite.guillory_sarason_pair(infinite.SequenceSpec.geometric(20))
    checks = [_check(f"sup_diff[k={s.k}]", s.sup_diff, 2.0 ** (-s.k), s.meets_target)
              for s in pair.steps]
    idx = infinite.winding_index(pair.A, pair.B, [0.999])
    checks.append(_check("index_equal_truncations", idx.windings[0], 0, idx.windings[0] == 0))
    extra = np.concatenate([pair.B, [0.0, 0.1j, -0.2]])
    idx3 = infinite.winding_index(pair.A, extra, [0.999])
    checks.append(_check("index_three_appended", idx3.windings[0], 3, idx3.windings[0] == 3))
    checks.append(_check("telescope", infinite.telescope_check(pair.A, pair.B), 0.0,
                         infinite.telescope_check(pair.A, pair.B) <= 1e-15))
    return checks


def koosis():
    gamma = 0.5 * cmath.exp(1j * math.pi / 4)
    _, zs = infinite.koosis_zeros(1.0, gamma, range(-30, 31))
    res = infinite.koosis_residuals(1.0, gamma, zs)
    return [
        _check("max_residual", res.max(), 1e-10, res.max() <= 1e-10),
        _check("max_modulus", np.abs(zs).max(), 1.0, np.abs(zs).max() < 1),
    ]


def hankel_probe():
    checks = []
    for a in (0.0, 0.5, 0.9):
        p = hardy.hankel_norm_probe(a, 2048)
        if a == 0:
            checks.append(_check("norm[a=0]", p.norm, 1.0, p.norm == 1.0))
        else:
            dev = abs(p.norm - p.oracle)
            checks.append(_check(f"oracle[a={a}]", dev, 1e-6, dev <= 1e-6))
            checks.append(_check(f"stated_value_gap[a={a}]", p.norm - p.stated_value, 0.0,
                                 True, asserted=False))
    return checks


RUNNERS = {
    "example-2-7": lambda seed: example_2_7(),
    "weyl": weyl,
    "gs-pair": lambda seed: gs_pair(),
    "koosis": lambda seed: koosis(),
    "hankel-probe": lambda seed: hankel_probe(),
}


def run(name, seed=0):
    if name not in RUNNERS:
        raise ValidationError(f"unknown reproduction {name!r}")
    checks = RUNNERS[name](seed)
    failed = any(c["status"] == "FAIL" for c in checks)
    return {
        "name": name,
        "status": "FAIL" if failed else "PASS",
        "diagnostic": any(c["status"] == "DIAGNOSTIC" for c in checks),
        "checks": checks,
    }
