"""Select the reduction kernel at import: compiled if available, else pure Python."""

import os

if os.environ.get("CETKIT_PURE", "") not in ("", "0"):
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel
    except ImportError:
        from . import _kernel_py as kernel

BACKEND = kernel.BACKEND

__all__ = ["kernel", "BACKEND"]
