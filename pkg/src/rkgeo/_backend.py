"""Select the compiled kernels when available, else the numpy fallback.

Set ``RKGEO_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
permanent_kernel = _pykernels.permanent
blaschke_kernel = _pykernels.blaschke_product

if not os.environ.get("RKGEO_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        permanent_kernel = _ckernels.permanent
        blaschke_kernel = _ckernels.blaschke_product
