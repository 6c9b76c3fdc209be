"""Kernel backend selection.

The compiled backend is used when the extension imports; setting
``PGROUP_PURE_PYTHON=1`` forces the pure-Python one.
"""
import os

from . import _pykernels


def _load_compiled():
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()

if _compiled is not None and not os.environ.get("PGROUP_PURE_PYTHON"):
    _impl = _compiled
else:
    _impl = _pykernels

BACKEND = _impl.NAME
prepare = _impl.prepare
extend_map = _impl.extend_map
first_nonassociative = _impl.first_nonassociative
Collector = _impl.Collector


def available_backends():
    """Mapping of backend name to module, for tests and benchmarks."""
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
