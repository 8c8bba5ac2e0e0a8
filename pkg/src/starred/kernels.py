"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``STARRED_PURE_PYTHON=1`` to force the Python implementation.
"""

from __future__ import annotations

import os
from functools import lru_cache

from . import _kernels_py

_impl = _kernels_py
if os.environ.get("STARRED_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
pad = _kernels_py.pad

__all__ = [
    "BACKEND",
    "pad",
    "ambient_star_terms",
    "ambient_poisson_terms",
    "fundamental_expansion",
    "reduced_star_terms",
    "reduced_mul_terms",
    "reduced_poisson_terms",
]


def _dispatch(name):
    fast = getattr(_impl, name)
    slow = getattr(_kernels_py, name)

    @lru_cache(maxsize=1 << 16)
    def kernel(*args):
        try:
            return fast(*args)
        except OverflowError:
            return slow(*args)

    kernel.__name__ = name
    kernel.__doc__ = slow.__doc__
    return kernel


ambient_star_terms = _dispatch("ambient_star_terms")
ambient_poisson_terms = _dispatch("ambient_poisson_terms")
fundamental_expansion = _dispatch("fundamental_expansion")
reduced_star_terms = _dispatch("reduced_star_terms")
reduced_mul_terms = _dispatch("reduced_mul_terms")
reduced_poisson_terms = _dispatch("reduced_poisson_terms")
