"""Backend dispatch for the hot numeric kernels.

Set ADJFLOW_BACKEND=numpy to force the pure-numpy path, or leave it unset
(or "numba"/"auto") to use the jitted kernels when numba is importable.
"""

import os

_requested = os.environ.get("ADJFLOW_BACKEND", "auto").lower()

if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"ADJFLOW_BACKEND={_requested!r}: expected 'auto', 'numba' or 'numpy'")

if _requested == "numpy":
    from . import numpy_backend as _impl
    BACKEND = "numpy"
else:
    try:
        from . import numba_backend as _impl
        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import numpy_backend as _impl
        BACKEND = "numpy"

sample2 = _impl.sample2
sample2_mac = _impl.sample2_mac
sample3 = _impl.sample3
grad3 = _impl.grad3
gradvel3_mac = _impl.gradvel3_mac
rk4_march = _impl.rk4_march
transform_mac = _impl.transform_mac
sample2_clamped = _impl.sample2_clamped
rbgs_sweep = _impl.rbgs_sweep
apply_neumann_laplacian = _impl.apply_neumann_laplacian
restrict_full = _impl.restrict_full
prolong_add = _impl.prolong_add
