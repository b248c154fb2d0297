"""Hot-kernel dispatch.

The compiled ``_ckernels`` extension is used when importable; otherwise the
NumPy implementations in ``_pykernels`` are used.  Setting the environment
variable ``GNFLOW_KERNELS=python`` forces the fallback.  ``BACKEND`` names
the active choice.
"""
import os

from gnflow import _pykernels

_impl = _pykernels
BACKEND = "python"

if os.environ.get("GNFLOW_KERNELS", "").lower() != "python":
    try:
        from gnflow import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        pass

cyclic_tridiag = _impl.cyclic_tridiag
flux_apply = _impl.flux_apply
hermite_eval = _impl.hermite_eval
hermite_invert = _impl.hermite_invert

__all__ = ["BACKEND", "cyclic_tridiag", "flux_apply", "hermite_eval", "hermite_invert"]
