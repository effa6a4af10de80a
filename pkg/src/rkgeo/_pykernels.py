"""Pure-Python (numpy) versions of the compiled kernels in ``_ckernels``."""

import numpy as np


def permanent(m):
    m = np.ascontiguousarray(m, dtype=np.complex128)
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0j
    rows = np.zeros(n, dtype=np.complex128)
    total = 0j
    prev = 0
    for step in range(1, 1 << n):
        g = step ^ (step >> 1)
        diff = g ^ prev
        j = (diff & -diff).bit_length() - 1
        if g >> j & 1:
            rows += m[:, j]
        else:
            rows -= m[:, j]
        prev = g
        k = bin(g).count("1")
        term = complex(np.prod(rows))
        total += -term if (n - k) & 1 else term
    return complex(total)


def blaschke_product(zeros, z):
    zeros = np.asarray(zeros, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    out = np.ones(z.shape, dtype=np.complex128)
    mind = np.inf
    for a in zeros:
        r = abs(a)
        if r == 0.0:
            out *= z
            continue
        den = 1 - np.conj(a) * z
        if den.size:
            mind = min(mind, float(np.min(np.abs(den))))
        out *= (np.conj(a) / r) * (a - z) / den
    return out, (1e300 if mind == np.inf else mind)
