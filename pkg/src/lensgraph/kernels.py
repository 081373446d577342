"""Backend selection for the force-step kernel.

The compiled extension is preferred; the pure-Python twin is the fallback and
can be forced with LENSGRAPH_PURE=1. Both produce bit-identical results, so
the choice only affects speed.
"""

import os

if os.environ.get("LENSGRAPH_PURE") == "1":
    from . import _pure as _impl
else:
    try:
        from . import _fastpath as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

step_kernel = _impl.step_kernel
BACKEND: str = _impl.BACKEND

__all__ = ["step_kernel", "BACKEND"]
