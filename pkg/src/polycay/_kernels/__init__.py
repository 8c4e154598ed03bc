"""Hot-kernel selection: compiled extension if built, else pure Python.

Set POLYCAY_PURE=1 to force the pure kernels (used by the benchmark and
the equivalence tests).  `BACKEND` names the active implementation.
"""

import os

from . import pure

if os.environ.get("POLYCAY_PURE"):
    impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _speedups as impl  # type: ignore[no-redef]

        BACKEND = "speedups"
    except ImportError:
        impl = pure
        BACKEND = "pure"

enum_points = impl.enum_points
exists_point = impl.exists_point
