"""Exact complex-rational re-verification of the Bergman constructions.

Numerator polynomials are expanded over the Gaussian rationals with sympy;
roots and determinants are then evaluated with mpmath at ``dps`` digits.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
import sympy as sp

# Reference configuration: three Bergman kernel centres, coefficients, two
# rational approximations of roots, and the published root approximations.
DEMO_B = (
    (Fraction(-257, 367), Fraction(-17, 45)),
    (Fraction(-62, 311), Fraction(337, 376)),
    (Fraction(356, 403), Fraction(86, 403)),
)
DEMO_C = (
    (Fraction(33, 68), Fraction(-19, 411)),
    (Fraction(244, 353), Fraction(-16, 343)),
    (Fraction(43, 85), Fraction(-254, 335)),
)
DEMO_A12 = (
    (Fraction(-67, 80), Fraction(88, 255)),
    (Fraction(101, 586), Fraction(-369, 443)),
)
DEMO_ROOTS = (
    complex(-0.837508, 0.3451006),
    complex(0.1723709, -0.832953),
    complex(0.466866, 0.855772),
)


def to_complex(pair):
    return complex(float(pair[0]), float(pair[1]))


def _sym(pair):
    return sp.Rational(pair[0].numerator, pair[0].denominator) + sp.I * sp.Rational(
        pair[1].numerator, pair[1].denominator
    )


_z = sp.Symbol("z")


def _numerator(bs, cs):
    expr = 0
    for j, c in enumerate(cs):
        term = c
        for l, b in enumerate(bs):
            if l != j:
                term *= (1 - _z * sp.conjugate(b)) ** 2
        expr += term
    return sp.Poly(sp.expand(expr), _z)


def _mpc(x, dps):
    re, im = sp.re(x), sp.im(x)
    return mpmath.mpc(sp.N(re, dps + 5), sp.N(im, dps + 5))


def exact_numerator_roots(b=DEMO_B, c=DEMO_C, dps=50):
    """High-precision roots of the exactly expanded numerator of ``sum c_j k_{b_j}``."""
    bs = [_sym(p) for p in b]
    cs = [_sym(p) for p in c]
    poly = _numerator(bs, cs)
    with mpmath.workdps(dps):
        coeffs = [_mpc(x, dps) for x in poly.all_coeffs()]
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=2 * dps)
    return roots


def _mp_point(x):
    if isinstance(x, tuple):
        re, im = x
        return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator,
                          mpmath.mpf(im.numerator) / im.denominator)
    return mpmath.mpc(x)


def bergman_det_mp(a, b, dps=50):
    """``det(1/(1 - a_i conj b_j)^2)`` in mpmath at ``dps`` digits.

    Points may be mpmath numbers, Python complex or ``(Fraction, Fraction)``.
    """
    with mpmath.workdps(dps):
        m = mpmath.matrix(len(a), len(b))
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                m[i, j] = 1 / (1 - _mp_point(ai) * mpmath.conj(_mp_point(bj))) ** 2
        return mpmath.det(m)


def exact_completion(a12=DEMO_A12, b=DEMO_B, dps=50):
    """Exact deflated quadratic and its roots for the two-point completion.

    Returns ``(quadratic_poly, remainder_is_zero, roots_mp)``.
    """
    bs = [_sym(p) for p in b]
    a1, a2 = (_sym(p) for p in a12)
    rows = [[1 / (1 - a * sp.conjugate(bj)) ** 2 for bj in bs] for a in (a1, a2)]
    cof = []
    for j in range(3):
        cols = [k for k in range(3) if k != j]
        minor = rows[0][cols[0]] * rows[1][cols[1]] - rows[0][cols[1]] * rows[1][cols[0]]
        cof.append((-1) ** j * sp.nsimplify(sp.expand(minor)))
    num = _numerator(bs, cof)
    quad, rem = sp.div(num, sp.Poly((_z - a1) * (_z - a2), _z))
    with mpmath.workdps(dps):
        coeffs = [_mpc(x, dps) for x in quad.all_coeffs()]
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=2 * dps)
    return quad, rem.is_zero, roots
