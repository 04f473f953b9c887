"""Kernel selection: compiled extension if importable, pure Python otherwise.

Set ``SURFACE_CERT_PURE=1`` to force the pure-Python kernels.
"""

import os

from surface_cert import _kernels_py

if os.environ.get("SURFACE_CERT_PURE", "") not in ("", "0"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from surface_cert import _kernels as kernels
        BACKEND = "compiled"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"

hlt_enumerate = kernels.hlt_enumerate
bar_boundary = kernels.bar_boundary
