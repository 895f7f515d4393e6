"""Effective channel, MMSE digital combiner, per-user SINR and sum-rate.

These are the straightforward matrix-formula versions, used for auditing
and for the fully digital baseline. The search algorithms evaluate sum-rates
through the faster backend kernels instead; the two paths agree to rounding.

Noise power is fixed at 1, so ``snr_linear`` is the received power ``p``.
"""

from dataclasses import dataclass

import numpy as np

from .numerics import solve_hpd
from .rf import AnalogCombiner


@dataclass(frozen=True)
class LinkMetrics:
    sinr_per_user: np.ndarray
    sum_rate: float
    snr_linear: float


def _w(w_rf):
    return w_rf.w_rf if isinstance(w_rf, AnalogCombiner) else np.asarray(w_rf, dtype=np.complex128)


def effective_channel(w_rf, h):
    """``H_e = W_RF^H H`` (rows: RF chains, columns: users)."""
    w = _w(w_rf)
    h = np.asarray(h, dtype=np.complex128)
    if w.shape[0] != h.shape[0]:
        raise ValueError(f"W_RF has {w.shape[0]} rows but H has {h.shape[0]}")
    return w.conj().T @ h


def mmse_combiner(h_e, snr_linear):
    """MMSE digital combiner ``W_BB = H_e (I_K + p H_e^H H_e)^{-1}``.

    Column ``k`` is the combiner of user ``k``. Equivalently
    ``(I + p H_e H_e^H)^{-1} h_e,k``; only a K x K Hermitian system is
    solved, which also covers a tall ``h_e`` (fully digital receiver).
    """
    if not snr_linear > 0:
        raise ValueError("snr_linear must be positive")
    h_e = np.asarray(h_e, dtype=np.complex128)
    k = h_e.shape[1]
    a = np.eye(k) + snr_linear * (h_e.conj().T @ h_e)
    a = 0.5 * (a + a.conj().T)
    return solve_hpd(a, h_e.conj().T).conj().T


def sinr(k, w_rf, w_bb, h, snr_linear):
    """Post-combining SINR of user ``k``."""
    w = _w(w_rf)
    h = np.asarray(h, dtype=np.complex128)
    g = w @ np.asarray(w_bb)[:, k]      # hybrid combining vector
    proj = g.conj() @ h
    sig = snr_linear * abs(proj[k]) ** 2
    intf = snr_linear * (np.sum(np.abs(proj) ** 2) - abs(proj[k]) ** 2)
    noise = np.vdot(g, g).real
    den = intf + noise
    return float(sig / den) if den > 0 else 0.0


def sum_rate_from_sinr(sinrs):
    return float(np.sum(np.log2(1.0 + np.asarray(sinrs, dtype=np.float64))))


def link_metrics(w_rf, h, snr_linear):
    """Full chain: effective channel, MMSE combiner, SINRs and sum-rate."""
    h = np.asarray(h, dtype=np.complex128)
    w_bb = mmse_combiner(effective_channel(w_rf, h), snr_linear)
    sinrs = np.array([sinr(k, w_rf, w_bb, h, snr_linear) for k in range(h.shape[1])])
    return LinkMetrics(sinr_per_user=sinrs, sum_rate=sum_rate_from_sinr(sinrs),
                       snr_linear=snr_linear)


def sum_rate(w_rf, h, snr_linear):
    return link_metrics(w_rf, h, snr_linear).sum_rate
