"""Reference receivers the proposed selection is compared against."""

import numpy as np

from ..combining import sum_rate
from ..selection import fcps_selection, selection_rate


def baseline_fd(h, snr_linear):
    """Fully digital MMSE receiver (one RF chain per antenna)."""
    h = np.asarray(h, dtype=np.complex128)
    return sum_rate(np.eye(h.shape[0], dtype=np.complex128), h, snr_linear)


def fvps_combiner(h_hat):
    """Unit-modulus combiner with the exact phases of ``h_hat``."""
    h_hat = np.asarray(h_hat, dtype=np.complex128)
    return np.exp(1j * np.where(h_hat == 0, 0.0, np.angle(h_hat)))


def baseline_fvps_approx(h, h_hat, snr_linear):
    """Fully connected variable-phase-shifter stand-in.

    Infinite-resolution limit of the CPS first stage followed by the same
    MMSE digital combiner.
    """
    h = np.ascontiguousarray(h, dtype=np.complex128)
    w = np.ascontiguousarray(fvps_combiner(h_hat))
    return selection_rate(w, fcps_selection(*h.shape), h, snr_linear)
