"""Backend selection for the numeric kernels.

The compiled extension is used when it imports; setting
``JSRAY_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _pykernels

python_backend = _pykernels

if os.environ.get("JSRAY_PURE_PYTHON", "") == "1":
    compiled_backend = None
else:
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "numpy"

shift_profile = backend.shift_profile
scan_min = backend.scan_min
ratio_max = backend.ratio_max
