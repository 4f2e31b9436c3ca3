"""Numba switch.

Kernels are written once against numpy arrays. With numba importable and
``KURINDEX_JIT`` unset (or truthy) they are compiled with ``njit``; with
``KURINDEX_JIT=0`` the same bodies run as plain numpy code. The
uncompiled body of a compiled kernel stays reachable through ``py_func``,
which is what the benchmark and the parity tests use.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

JIT_ENABLED = numba is not None and os.environ.get("KURINDEX_JIT", "1").lower() not in (
    "0",
    "false",
    "no",
    "off",
)


def kernel(fn):
    if JIT_ENABLED:
        return numba.njit(cache=True)(fn)
    return fn


def py_func(fn):
    """Pure-numpy body of a kernel, whether or not it was compiled."""
    return getattr(fn, "py_func", fn)
