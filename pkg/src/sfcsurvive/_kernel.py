"""Selects the branch-and-bound kernel at import time.

The compiled extension is preferred when present; the pure-Python fallback
implements the identical search. Set SFC_SURVIVE_KERNEL=pure to force the
fallback (used by the kernel-equivalence tests and the benchmark).
"""
import os

from . import _bbpure

if os.environ.get("SFC_SURVIVE_KERNEL", "").lower() == "pure":
    _impl = _bbpure
    BACKEND = "pure"
else:
    try:
        from . import _bbcore as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _bbpure
        BACKEND = "pure"

STATUS_DONE = _bbpure.STATUS_DONE
STATUS_BUDGET = _bbpure.STATUS_BUDGET

bb_search = _impl.bb_search


def active_backend() -> str:
    return BACKEND
