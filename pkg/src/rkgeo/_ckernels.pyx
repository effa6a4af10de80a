# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: Ryser permanent and Blaschke products on point grids."""

import numpy as np
cimport numpy as cnp
from libc.math cimport hypot

cnp.import_array()


def permanent(double complex[:, ::1] m):
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t i, j, k
    cdef unsigned long long g, prev, diff, step, nsteps
    cdef double complex prod, total = 0
    cdef double sign
    cdef double complex[::1] rows = np.zeros(n, dtype=np.complex128)
    if n == 0:
        return 1.0 + 0j
    nsteps = 1ULL << n
    prev = 0
    for step in range(1, nsteps):
        g = step ^ (step >> 1)
        diff = g ^ prev
        j = 0
        while not (diff >> j) & 1:
            j += 1
        if (g >> j) & 1:
            for i in range(n):
                rows[i] = rows[i] + m[i, j]
        else:
            for i in range(n):
                rows[i] = rows[i] - m[i, j]
        prev = g
        prod = 1
        for i in range(n):
            prod = prod * rows[i]
        k = 0
        diff = g
        while diff:
            k += diff & 1
            diff >>= 1
        sign = -1.0 if (n - k) & 1 else 1.0
        total = total + sign * prod
    return complex(total)


def blaschke_product(double complex[::1] zeros, double complex[::1] z):
    cdef Py_ssize_t nz = zeros.shape[0]
    cdef Py_ssize_t npt = z.shape[0]
    cdef Py_ssize_t i, k
    cdef double r, m2, mind2 = 1e600, d2
    cdef double zr, zi, ar, ai, ur, ui, nr, ni, dr, di, tr, ti, vr, vi, pr, pi_
    ar_ = np.empty(nz)
    ai_ = np.empty(nz)
    ur_ = np.empty(nz)
    ui_ = np.empty(nz)
    cdef double[::1] Ar = ar_, Ai = ai_, Ur = ur_, Ui = ui_
    for k in range(nz):
        Ar[k] = zeros[k].real
        Ai[k] = zeros[k].imag
        r = hypot(Ar[k], Ai[k])
        # unimodular factor conj(a)/|a|; zero marks a root at the origin
        Ur[k] = Ar[k] / r if r != 0.0 else 0.0
        Ui[k] = -Ai[k] / r if r != 0.0 else 0.0
    out = np.empty(npt, dtype=np.complex128)
    cdef double complex[::1] o = out
    for i in range(npt):
        zr = z[i].real
        zi = z[i].imag
        vr = 1.0
        vi = 0.0
        for k in range(nz):
            ar = Ar[k]
            ai = Ai[k]
            if Ur[k] == 0.0 and Ui[k] == 0.0:
                tr = zr
                ti = zi
            else:
                # u (a - z) / (1 - conj(a) z)
                nr = ar - zr
                ni = ai - zi
                dr = 1.0 - (ar * zr + ai * zi)
                di = -(ar * zi - ai * zr)
                d2 = dr * dr + di * di
                if d2 < mind2:
                    mind2 = d2
                pr = nr * dr + ni * di
                pi_ = ni * dr - nr * di
                tr = (Ur[k] * pr - Ui[k] * pi_) / d2
                ti = (Ur[k] * pi_ + Ui[k] * pr) / d2
            pr = vr * tr - vi * ti
            vi = vr * ti + vi * tr
            vr = pr
        o[i].real = vr
        o[i].imag = vi
    return out, (1e300 if mind2 >= 1e600 else mind2 ** 0.5)
