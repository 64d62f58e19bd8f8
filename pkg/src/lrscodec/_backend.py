"""Kernel backend selection.

The compiled kernels are used when the extension was built; otherwise the
pure-Python kernels are used. Setting ``LRSCODEC_PURE_PYTHON=1`` forces the
fallback, which is how the test suite exercises both paths.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = {"python": _pykernels.Arith}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels.Arith

if os.environ.get("LRSCODEC_PURE_PYTHON") or _ckernels is None:
    DEFAULT_BACKEND = "python"
else:
    DEFAULT_BACKEND = "cython"


def arith_class(name=None):
    name = name or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}; have {sorted(BACKENDS)}") from None
