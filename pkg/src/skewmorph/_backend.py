"""Pick the kernel implementation once, at import time.

The compiled extension is used when it was built; setting
``SKEWMORPH_PURE_PYTHON=1`` forces the pure-Python twin.
"""
import os

from . import _kernels_py

if os.environ.get("SKEWMORPH_PURE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND


def available_backends():
    """All importable kernel modules, pure Python first."""
    out = [_kernels_py]
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out.append(_kernels)
    return out
