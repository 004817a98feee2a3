"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``BIQUAD_PURE=1`` to force the pure-Python kernels.  Any call into the
compiled kernels that overflows 64-bit arithmetic is rerun in pure Python,
so results never depend on which backend is active.
"""

from __future__ import annotations

import os

from . import _pykernels as _py

_NAMES = ("sign4", "is_tp4", "integral4", "scan_dominated", "scan_roots", "escalate_core")

_native = None
if os.environ.get("BIQUAD_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _native  # type: ignore[no-redef]
    except ImportError:
        _native = None

backend = "cython" if _native is not None else "python"


def _guard(name: str):
    fast = getattr(_native, name)
    slow = getattr(_py, name)

    def call(*args):
        try:
            return fast(*args)
        except OverflowError:
            return slow(*args)

    call.__name__ = name
    call.__doc__ = slow.__doc__
    return call


if _native is not None:
    sign4 = _guard("sign4")
    is_tp4 = _guard("is_tp4")
    integral4 = _py.integral4  # cheap; avoids the call overhead
    scan_dominated = _guard("scan_dominated")
    scan_roots = _guard("scan_roots")
    escalate_core = _guard("escalate_core")
else:
    sign4 = _py.sign4
    is_tp4 = _py.is_tp4
    integral4 = _py.integral4
    scan_dominated = _py.scan_dominated
    scan_roots = _py.scan_roots
    escalate_core = _py.escalate_core

mul4 = _py.mul4
is_nonneg4 = _py.is_nonneg4
EMBEDDING_SIGNS = _py.EMBEDDING_SIGNS


def kernels(name: str):
    """Return the kernel module called ``name`` ("python" or "cython")."""
    if name == "python":
        return _py
    if name == "cython":
        if _native is None:
            raise ImportError("compiled kernels are not built")
        return _native
    raise ValueError(name)
