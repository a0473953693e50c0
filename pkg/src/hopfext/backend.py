"""Select the row-reduction kernel at import time.

The compiled extension is preferred; HOPFEXT_PURE=1 forces the pure-Python
fallback (used by the benchmark and as an escape hatch on exotic platforms).
"""

import os

if os.environ.get("HOPFEXT_PURE", "") not in ("", "0"):
    from . import _pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

BACKEND = _impl.BACKEND
rref_q = _impl.rref_q
rref_fp = _impl.rref_fp
mat_mul_q = _impl.mat_mul_q
mat_mul_fp = _impl.mat_mul_fp
