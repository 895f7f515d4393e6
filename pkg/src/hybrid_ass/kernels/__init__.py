"""Hot numeric kernels with two interchangeable backends.

``numba`` (default) compiles explicit loops with ``@njit``; ``numpy`` is a
vectorized pure-numpy path. Pick one with the ``HYBRID_ASS_BACKEND``
environment variable before import, or call :func:`set_backend` at runtime.

Every backend exposes the same functions:

``householder_qr(m) -> (q, r)``
``cholesky_solve(a, b) -> (x, ok)``
``batch_sum_rate(w_tilde, s_batch, h, snr) -> rates``
``removal_rates(w_tilde, s, h, snr, cand) -> rates``
``exhaustive_search(w_tilde, h, snr) -> (s_best, rate_best, count)``

Within one backend, the sum-rate of a given selection is bit-identical
whichever of the last three kernels computes it.
"""

import os
import warnings

from . import _numpy

BACKENDS = ("numba", "numpy")
ENV_VAR = "HYBRID_ASS_BACKEND"

_active = None


def _load(name):
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba
        return _numba
    raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")


def set_backend(name):
    """Switch the active kernel backend; returns the previous name."""
    global _active
    prev = backend_name()
    _active = _load(name)
    return prev


def get_backend():
    global _active
    if _active is None:
        name = os.environ.get(ENV_VAR, "numba").strip().lower() or "numba"
        try:
            _active = _load(name)
        except ImportError:
            warnings.warn("numba unavailable; falling back to numpy kernels")
            _active = _numpy
    return _active


def backend_name():
    return "numpy" if get_backend() is _numpy else "numba"
