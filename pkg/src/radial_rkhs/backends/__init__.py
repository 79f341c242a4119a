"""Backend selection for the hot array kernels.

The RADIAL_RKHS_BACKEND environment variable picks the implementation at
import time:

* ``numba`` - require the JIT path, fail if numba is unusable
* ``numpy`` - force the pure-numpy fallback
* ``auto``  - default; numba when it imports cleanly, numpy otherwise

``benchmarks/bench_backends.py`` times the two side by side.
"""

import os

from . import numpy_backend

_choice = os.environ.get("RADIAL_RKHS_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"RADIAL_RKHS_BACKEND must be 'auto', 'numba' or 'numpy', got {_choice!r}"
    )

if _choice == "numpy":
    _impl = numpy_backend
else:
    try:
        from . import numba_backend as _impl
    except ImportError:
        if _choice == "numba":
            raise
        _impl = numpy_backend

BACKEND = "numpy" if _impl is numpy_backend else "numba"

pairwise_log_min = _impl.pairwise_log_min
pairwise_power_min = _impl.pairwise_power_min
expansion_values_log = _impl.expansion_values_log
expansion_values_power = _impl.expansion_values_power
expansion_derivs_log = _impl.expansion_derivs_log
expansion_derivs_power = _impl.expansion_derivs_power


def warm_up():
    """Trigger JIT compilation of every hot kernel (no-op on numpy)."""
    import numpy as np

    ts = np.array([0.25, 0.5])
    rs = np.array([0.4, 0.9])
    cs = np.array([1.0, -1.0])
    pairwise_log_min(ts, rs)
    pairwise_power_min(3.0, 4.0 * np.pi, ts, rs)
    expansion_values_log(ts, cs, rs)
    expansion_values_power(3.0, 4.0 * np.pi, ts, cs, rs)
    expansion_derivs_log(ts, np.cumsum(cs), rs)
    expansion_derivs_power(3.0, 4.0 * np.pi, ts, np.cumsum(cs), rs)
