"""Hot loops behind a backend switch.

The compiled Cython module is used when it imports; otherwise the pure-Python
reference kernels are used. ``ACYCLIC_BOUNDS_BACKEND=python`` forces the
fallback, and :func:`use_backend` switches at runtime (tests and benchmarks).
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from typing import Iterator

from acyclic_bounds.kernels import _py

try:
    from acyclic_bounds.kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

AVAILABLE = ("cython", "python") if _ckernels is not None else ("python",)

_active = _ckernels if _ckernels is not None and os.environ.get("ACYCLIC_BOUNDS_BACKEND") != "python" else _py


def backend() -> str:
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def set_backend(name: str) -> None:
    global _active
    if name == "python":
        _active = _py
    elif name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available in this installation")
        _active = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextmanager
def use_backend(name: str) -> Iterator[None]:
    previous = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _impl():
    # a fault injected into the reference catalog must not be bypassed by the compiled path
    return _py if _py._fault is not None else _active


def covariance_sum(D, rho):
    return _impl().covariance_sum(D, rho)


def dl_members(D, rank):
    return _impl().dl_members(D, rank)


def dl_sizes(D, ranks):
    return _impl().dl_sizes(D, ranks)


def max_acyclic_mask(k, in_masks):
    return _impl().max_acyclic_mask(k, in_masks)
