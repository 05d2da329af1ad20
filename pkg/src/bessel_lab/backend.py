"""Selection of the hot-kernel backend.

The numba implementations are used when numba imports cleanly; setting the
environment variable BESSEL_LAB_NO_NUMBA (to 1/true/yes/on) before the
package is imported forces the pure-numpy fallback.  Both backends share
identical call signatures and semantics; benchmarks/bench_backends.py
compares them head to head.
"""

from __future__ import annotations

import os

from . import _kernels_numpy as numpy_kernels

_FLAG = os.environ.get("BESSEL_LAB_NO_NUMBA", "").strip().lower()
NUMBA_DISABLED = _FLAG in {"1", "true", "yes", "on"}

numba_kernels = None
if not NUMBA_DISABLED:
    try:
        from . import _kernels_numba as numba_kernels  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - exercised only without numba
        numba_kernels = None

kernels = numba_kernels if numba_kernels is not None else numpy_kernels


def backend_name() -> str:
    return "numba" if kernels is numba_kernels and numba_kernels is not None else "numpy"
