"""Kernel selection.

The compiled extension is used when it was built; otherwise the pure
Python module.  Set ``ZACYCLIC_PURE_PYTHON=1`` to force the fallback.
Both raise nothing on valid input; the compiled one may raise
``OverflowError``, in which case the Python kernel is used for that call.
"""

import os

from . import _lp

try:
    if os.environ.get("ZACYCLIC_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _lpkernel
except ImportError:
    _lpkernel = None

BACKEND = "compiled" if _lpkernel is not None else "python"


def intersect_lp(P, Q, objective, backend: str | None = None):
    backend = backend or BACKEND
    if backend == "compiled":
        if _lpkernel is None:
            raise RuntimeError("compiled kernel not available")
        try:
            return _lpkernel.intersect_lp(P, Q, objective)
        except OverflowError:
            pass
    return _lp.intersect_lp(P, Q, objective)
