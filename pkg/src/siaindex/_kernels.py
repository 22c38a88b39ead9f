"""Pick the compiled kernels when they import, else the pure-Python ones.

Set ``SIAINDEX_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if _ckernels is not None and not os.environ.get("SIAINDEX_PURE_PYTHON"):
    BACKEND = "cython"
    _impl = _ckernels
else:
    BACKEND = "python"
    _impl = _pykernels

NOT_IC = _pykernels.NOT_IC
NOT_SYNCHRONIZING = _pykernels.NOT_SYNCHRONIZING
CUTOFF_REACHED = _pykernels.CUTOFF_REACHED

pattern_product = _impl.pattern_product
pattern_power = _impl.pattern_power
first_pc_power = _impl.first_pc_power
eventual_pc_mask = _impl.eventual_pc_mask
sarymsakov_violation = _impl.sarymsakov_violation
auto_is_sia = _impl.auto_is_sia
auto_synchronizing = _impl.auto_synchronizing
auto_is_ic = _impl.auto_is_ic
auto_sia_index = _impl.auto_sia_index
batch_sia_indices = _impl.batch_sia_indices


def get_backend(name):
    """Return the kernel module registered under ``name`` ("python" or "cython")."""
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None
