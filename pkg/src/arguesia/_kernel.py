"""Kernel selection: compiled extension when present, pure Python otherwise.

Set ``ARGUESIA_PURE=1`` to force the pure-Python kernel (used by the
benchmark and by tests that must exercise both implementations).
"""

import os

if os.environ.get("ARGUESIA_PURE") == "1":
    from arguesia import _pykernel as _impl
else:
    try:
        from arguesia import _ckernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from arguesia import _pykernel as _impl

BACKEND = _impl.BACKEND
norm3 = _impl.norm3
cross3 = _impl.cross3
dot3 = _impl.dot3
det3 = _impl.det3
norm2 = _impl.norm2
norm_mat2 = _impl.norm_mat2
mat2_mul = _impl.mat2_mul
mat2_pair = _impl.mat2_pair
conic_eval = _impl.conic_eval
conic_polar = _impl.conic_polar


def kernel_backend() -> str:
    """Name of the kernel implementation in use ("cython" or "python")."""
    return BACKEND
