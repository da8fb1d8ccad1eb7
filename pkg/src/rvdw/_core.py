"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``RVDW_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernel

if os.environ.get("RVDW_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernel
else:
    try:
        from . import _kernel as _impl
    except ImportError:  # extension not built
        _impl = _pykernel

BACKEND = "python" if _impl is _pykernel else "cython"
SAT, UNSAT, BUDGET = _pykernel.SAT, _pykernel.UNSAT, _pykernel.BUDGET

aps_in_sorted = _impl.aps_in_sorted
solve_two_color = _impl.solve_two_color
