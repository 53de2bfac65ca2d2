"""Backend selection for the sweep kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``CONEDEPTH_PURE_PYTHON`` is set to a non-empty value,
the pure-Python kernels are used. Both share one contract (see
:mod:`conedepth._kernels_py`).
"""
import os

from . import _kernels_py as pure

compiled = None
if not os.environ.get("CONEDEPTH_PURE_PYTHON"):
    try:
        from . import _kernels as compiled
    except ImportError:  # extension not built
        compiled = None

active = compiled if compiled is not None else pure
COMPILED = active is compiled

depth_sweep = active.depth_sweep
depth_many = active.depth_many
quantile_sweep = active.quantile_sweep
