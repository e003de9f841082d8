"""Kernel backend selection: compiled extension when available, else pure Python.

Set ``SCIMETRICS_PURE_PYTHON=1`` to force the fallback (used by the parity
tests and the benchmark). Both backends are bit-for-bit interchangeable.
"""

from __future__ import annotations

import os

if os.environ.get("SCIMETRICS_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND

abs_diff_total = _impl.abs_diff_total
betweenness_csr = _impl.betweenness_csr
louvain_pass = _impl.louvain_pass
kk_minimize = _impl.kk_minimize
