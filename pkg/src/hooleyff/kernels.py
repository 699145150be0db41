"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback has identical
semantics.  Set ``HOOLEYFF_FORCE_PY=1`` to force the fallback (used by the
backend-agreement tests and the benchmark harness).
"""

from __future__ import annotations

import os

if os.environ.get("HOOLEYFF_FORCE_PY"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on build environment
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
dft_bilinear = _impl.dft_bilinear
mult_convolve = _impl.mult_convolve
