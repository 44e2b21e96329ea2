"""Kernel selection: compiled Cython extension if built, else pure Python.

Set SECROUTE_FORCE_PY=1 to force the Python fallback (used by the kernel
benchmark and the fallback tests).
"""
import os

if os.environ.get("SECROUTE_FORCE_PY") == "1":
    from . import dp_py as _impl
else:
    try:
        from . import dp_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import dp_py as _impl

BACKEND = _impl.BACKEND
budget_dp = _impl.budget_dp
hop_budget_dp = _impl.hop_budget_dp
hop_budget_dp_path = _impl.hop_budget_dp_path
