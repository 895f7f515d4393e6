"""Analog front end: CPS codebook, switching matrices and the RF combiner.

The analog combiner is built in two stages. First every antenna of every
RF chain is switched onto the constant phase shifter nearest to the phase
of the orthonormalized channel (``build_unselected_abf``); then a binary
selection matrix masks out the antennas each chain should ignore
(``apply_selection``).
"""

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class CpsCodebook:
    """``n_cps`` equally spaced constant phases starting at 0."""

    n_cps: int

    def __post_init__(self):
        if self.n_cps < 1:
            raise ValueError("n_cps must be >= 1")

    @property
    def phases(self):
        return TWO_PI * np.arange(self.n_cps) / self.n_cps

    @property
    def psi(self):
        return np.exp(1j * self.phases)


@dataclass(frozen=True)
class AnalogCombiner:
    w_rf: np.ndarray              # (n_rx, K), entries 0 or unit modulus
    selection: np.ndarray         # (n_rx, K) uint8
    per_chain_active: np.ndarray  # (K,) L_k


def _circular_distance(a, b):
    d = np.abs(a - b) % TWO_PI
    return np.minimum(d, TWO_PI - d)


def quantize_phases(theta, codebook):
    """Vectorized nearest-codeword indices (0-based) under circular distance.

    Ties go to the smaller index.
    """
    theta = np.mod(np.asarray(theta, dtype=np.float64), TWO_PI)
    dist = _circular_distance(theta[..., None], codebook.phases)
    return np.argmin(dist, axis=-1)


def quantize_phase(theta, codebook):
    """Quantize one angle; returns ``(q_hat, theta_hat)`` with 1-based ``q_hat``."""
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    q = int(quantize_phases(theta, codebook))
    return q + 1, float(codebook.phases[q])


def build_unselected_abf(h_hat, codebook):
    """First-stage switching matrices and the all-active analog combiner.

    Parameters
    ----------
    h_hat : (n_rx, K) complex array
        Orthonormal Q factor of the channel.
    codebook : CpsCodebook

    Returns
    -------
    deltas : (K, n_rx, n_cps) uint8 array
        One switching matrix per RF chain, exactly one active switch per row.
    w_tilde : (n_rx, K) complex array
        Unit-modulus combiner ``w_tilde[:, k] = deltas[k] @ psi``.
    """
    h_hat = np.asarray(h_hat, dtype=np.complex128)
    n_rx, k_users = h_hat.shape
    # angle(0) is 0 in numpy; zero entries therefore map to the first CPS
    theta = np.where(h_hat == 0, 0.0, np.angle(h_hat))
    q = quantize_phases(theta, codebook)
    deltas = np.zeros((k_users, n_rx, codebook.n_cps), dtype=np.uint8)
    deltas[np.arange(k_users)[None, :], np.arange(n_rx)[:, None], q] = 1
    w_tilde = codebook.psi[q]
    return deltas, w_tilde


def check_selection(s, shape=None, finalized=True):
    s = np.asarray(s)
    if s.ndim != 2:
        raise ValueError("selection must be 2-D")
    if shape is not None and s.shape != tuple(shape):
        raise ValueError(f"selection shape {s.shape} != {tuple(shape)}")
    if not np.isin(s, (0, 1)).all():
        raise ValueError("selection entries must be 0 or 1")
    s = s.astype(np.uint8)
    if finalized and (s.sum(axis=0) == 0).any():
        raise ValueError("every RF chain needs at least one selected antenna")
    return s


def apply_selection(w_tilde, s):
    """Mask the all-active combiner: ``W_RF = S * W_tilde`` elementwise."""
    w_tilde = np.asarray(w_tilde, dtype=np.complex128)
    s = check_selection(s, w_tilde.shape)
    w_rf = np.where(s == 1, w_tilde, 0.0)
    return AnalogCombiner(w_rf=w_rf, selection=s,
                          per_chain_active=s.sum(axis=0).astype(np.int64))


def select_switches(deltas, s):
    """Final switching matrices: row ``n`` of chain ``k`` zeroed when ``s[n, k] == 0``."""
    s = check_selection(s, (deltas.shape[1], deltas.shape[0]), finalized=False)
    return deltas * s.T[:, :, None]
