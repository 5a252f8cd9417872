"""Kernel selection: compiled extension if available, pure Python otherwise.

Set QUADTWIST_PURE=1 to force the pure-Python kernel (used by the benchmark
and by tests that compare the two implementations).
"""

from __future__ import annotations

import os

from . import _purekernel

if os.environ.get("QUADTWIST_PURE") == "1":
    impl = _purekernel
    BACKEND = "pure"
else:
    try:
        from . import _speedups as impl  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        impl = _purekernel
        BACKEND = "pure"

scan_row = impl.scan_row
kronecker_row = impl.kronecker_row
pure = _purekernel
