"""Per-RF-chain antenna subset selection.

Every search starts from the all-active analog combiner built from the
quantized phases of ``h_hat`` and returns a binary selection matrix ``S``
(antennas x RF chains) approximately maximizing the MMSE sum-rate.

Sum-rates are evaluated by the active kernel backend. ``evaluations``
counts sum-rate computations performed during the search, not including
the initial all-active rate ``c0``.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import SearchTooLargeError
from .rf import CpsCodebook, build_unselected_abf

EXHAUSTIVE_MAX_BITS = 20
DEFAULT_T_MAX = 5


@dataclass(frozen=True)
class SearchConfig:
    snr_linear: float
    codebook: CpsCodebook
    t_max: int = DEFAULT_T_MAX

    def __post_init__(self):
        if self.t_max < 1:
            raise ValueError("t_max must be >= 1")
        if not self.snr_linear > 0:
            raise ValueError("snr_linear must be positive")


@dataclass(frozen=True)
class SelectionResult:
    s_star: np.ndarray
    sum_rate: float
    iterations_used: int
    evaluations: int

    @property
    def active_per_chain(self):
        return self.s_star.sum(axis=0)


def _prepare(h, h_hat, cfg):
    h = np.ascontiguousarray(h, dtype=np.complex128)
    _, w_tilde = build_unselected_abf(h_hat, cfg.codebook)
    return h, np.ascontiguousarray(w_tilde)


def selection_rate(w_tilde, s, h, snr_linear):
    """Sum-rate of one selection through the backend kernel."""
    s = np.ascontiguousarray(s, dtype=np.uint8)[None]
    return float(kernels.get_backend().batch_sum_rate(w_tilde, s, h, snr_linear)[0])


def fcps_selection(n_rx, k_users):
    """All switches active (fully connected CPS baseline)."""
    return np.ones((n_rx, k_users), dtype=np.uint8)


def ds_ass(h, h_hat, cfg):
    """Decremental search.

    Each outer iteration tries removing every remaining antenna-chain
    connection on its own and permanently drops the one leaving the highest
    sum-rate, even when that rate is below the best so far. The best
    selection seen is kept separately; the search stops after ``t_max``
    consecutive iterations without reaching it. Removals that would leave a
    chain with no antenna are skipped.
    """
    h, w_tilde = _prepare(h, h_hat, cfg)
    n_rx, k_users = h.shape
    kern = kernels.get_backend()
    snr = cfg.snr_linear

    s = fcps_selection(n_rx, k_users)
    c_best = selection_rate(w_tilde, s, h, snr)
    s_best = s.copy()
    t = 0
    iterations = 0
    evaluations = 0
    while t < cfg.t_max:
        # column-major flat order: index j = k * n_rx + n
        removable = (s == 1) & (s.sum(axis=0) > 1)[None, :]
        ks, ns = np.nonzero(removable.T)
        if ks.size == 0:
            break
        cand = np.ascontiguousarray(np.column_stack([ns, ks]), dtype=np.int64)
        rates = kern.removal_rates(w_tilde, s, h, snr, cand)
        iterations += 1
        evaluations += cand.shape[0]
        j = int(np.argmax(rates))  # first maximum: smallest flat index
        s[cand[j, 0], cand[j, 1]] = 0
        if rates[j] >= c_best:
            c_best = float(rates[j])
            s_best = s.copy()
            t = 0
        else:
            t += 1
    return SelectionResult(s_best, c_best, iterations, evaluations)


def ascending_magnitude_order(h_hat):
    """Per column, antenna indices sorted by ascending ``|h_hat|`` (stable)."""
    return np.argsort(np.abs(np.asarray(h_hat)), axis=0, kind="stable")


def cm_ass_dynamic(h, h_hat, cfg):
    """Channel-magnitude search with a common, adaptively shrunk ``L``.

    Step ``l`` removes the ``l``-th weakest antenna of every chain at once,
    so all chains keep ``L = n_rx - l`` antennas. Stops after ``t_max``
    consecutive steps without a strict improvement.
    """
    h, w_tilde = _prepare(h, h_hat, cfg)
    n_rx, k_users = h.shape
    order = ascending_magnitude_order(h_hat)
    cols = np.arange(k_users)

    s = fcps_selection(n_rx, k_users)
    c_best = selection_rate(w_tilde, s, h, cfg.snr_linear)
    s_best = s.copy()
    t = 0
    steps = 0
    for l in range(1, n_rx):
        s[order[l - 1], cols] = 0
        c = selection_rate(w_tilde, s, h, cfg.snr_linear)
        steps += 1
        if c > c_best:
            c_best = c
            s_best = s.copy()
            t = 0
        else:
            t += 1
        if t >= cfg.t_max:
            break
    return SelectionResult(s_best, c_best, steps, steps)


def cm_ass_fixed(h_hat, l_fixed):
    """Keep the ``l_fixed`` largest-magnitude entries of each ``h_hat`` column.

    Equivalent to the selection ``cm_ass_dynamic`` holds after removing
    ``n_rx - l_fixed`` antennas per chain.
    """
    h_hat = np.asarray(h_hat)
    n_rx, k_users = h_hat.shape
    if not 1 <= l_fixed <= n_rx:
        raise ValueError(f"l_fixed must be in [1, {n_rx}], got {l_fixed}")
    order = ascending_magnitude_order(h_hat)
    s = np.zeros((n_rx, k_users), dtype=np.uint8)
    s[order[n_rx - l_fixed:], np.arange(k_users)] = 1
    return s


def exhaustive_ass(h, h_hat, cfg):
    """Global optimum over every selection with nonempty columns.

    Ties resolve to the lexicographically smallest column-major flattened
    selection. Limited to ``n_rx * K <= 20``.
    """
    n_rx, k_users = np.shape(h)
    if n_rx * k_users > EXHAUSTIVE_MAX_BITS:
        raise SearchTooLargeError(
            f"exhaustive search over {n_rx}x{k_users} switches exceeds the "
            f"{EXHAUSTIVE_MAX_BITS}-switch cap; use ds_ass instead")
    h, w_tilde = _prepare(h, h_hat, cfg)
    s, rate, count = kernels.get_backend().exhaustive_search(w_tilde, h, cfg.snr_linear)
    return SelectionResult(np.asarray(s, dtype=np.uint8), float(rate), count, count)
