"""Dense complex kernels: thin QR and Hermitian positive-definite solves.

Matrices are plain ``numpy`` complex128 arrays; the heavy lifting is done by
the active kernel backend (see :mod:`hybrid_ass.kernels`).
"""

import numpy as np

from . import kernels
from .errors import DegenerateChannelError, SingularSystemError

RANK_TOL = 1e-12
HERMITIAN_TOL = 1e-12


def as_complex_matrix(m, name="matrix"):
    """Validate ``m`` as a finite 2-D array and return it as complex128."""
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def qr_thin(m):
    """Thin QR factorization ``m = q @ r`` via Householder reflections.

    ``r`` has a real, strictly positive diagonal, so the factors are a
    deterministic function of ``m``.

    Raises
    ------
    DegenerateChannelError
        If a diagonal entry of ``r`` falls below ``1e-12`` times the largest
        column norm of ``m``.
    """
    a = as_complex_matrix(m, "m")
    n_rows, n_cols = a.shape
    if n_rows < n_cols:
        raise ValueError(f"qr_thin needs rows >= cols, got {a.shape}")
    q, r = kernels.get_backend().householder_qr(a)
    scale = np.linalg.norm(a, axis=0).max()
    if scale == 0.0 or np.abs(np.diag(r)).min() < RANK_TOL * scale:
        raise DegenerateChannelError("matrix is rank deficient")
    return q, r


def solve_hpd(a, b):
    """Solve ``a @ x = b`` for Hermitian positive-definite ``a`` (Cholesky)."""
    a = as_complex_matrix(a, "a")
    b = np.asarray(b, dtype=np.complex128)
    vector = b.ndim == 1
    b = as_complex_matrix(b[:, None] if vector else b, "b")
    k = a.shape[0]
    if a.shape != (k, k) or b.shape[0] != k:
        raise ValueError(f"shape mismatch: a {a.shape}, b {b.shape}")
    norm = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > HERMITIAN_TOL * norm:
        raise ValueError("a is not Hermitian")
    x, ok = kernels.get_backend().cholesky_solve(a, b)
    if not ok:
        raise SingularSystemError("non-positive pivot in Cholesky factorization")
    return x[:, 0] if vector else x
