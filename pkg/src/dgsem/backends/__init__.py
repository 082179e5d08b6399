"""Kernel backend selection.

The hot RHS kernels exist twice: a Cython extension (`_ckernels`) and a
vectorized NumPy fallback with identical semantics.  The compiled backend
is preferred when importable; set DGSEM_BACKEND=numpy|compiled to force a
choice (e.g. for the cross-backend equivalence tests and the benchmark).
"""

import os

from . import numpy_backend

try:
    from . import compiled_backend
except ImportError:  # extension not built; fall back silently
    compiled_backend = None

_BACKENDS = {"numpy": numpy_backend}
if compiled_backend is not None:
    _BACKENDS["compiled"] = compiled_backend

DEFAULT = "compiled" if compiled_backend is not None else "numpy"


def available_backends():
    return tuple(sorted(_BACKENDS))


def get_backend(name=None):
    """Resolve a backend module by name, env override, or default."""
    if name is None:
        name = os.environ.get("DGSEM_BACKEND", DEFAULT)
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
        ) from None
