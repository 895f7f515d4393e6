"""Complex floating-point operation estimates for the selection searches.

Per sum-rate evaluation: MMSE combining ``Nr K^2 + K^3`` plus the rate
itself ``Nr K``; once per channel: QR ``Nr K^2`` and phase quantization
``Nr K N_C``. The constants default to 1, so counts are order-of-magnitude
bookkeeping, good for ordering and growth rates only.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class FlopConstants:
    mmse: int = 1
    inverse: int = 1
    rate: int = 1
    qr: int = 1
    quantize: int = 1


def analytic_iterations(algorithm, n_rx, k_users):
    """Worst-case number of sum-rate evaluations ``i``."""
    if algorithm == "DS_ASS":
        # sum_{j=K+1}^{Nr K} j
        hi, lo = n_rx * k_users, k_users
        return hi * (hi + 1) // 2 - lo * (lo + 1) // 2
    if algorithm == "CM_ASS_DYNAMIC":
        return n_rx
    if algorithm in ("CM_ASS_FIXED", "FCPS"):
        return 1
    if algorithm == "EXHAUSTIVE":
        return 2 ** (n_rx * k_users)
    raise ValueError(f"no iteration model for {algorithm}")


def estimate_flops(algorithm, n_rx, k_users, n_cps, iterations_used=None,
                   constants=FlopConstants()):
    """Exact integer flop estimate; big counts are safe (Python ints)."""
    i = analytic_iterations(algorithm, n_rx, k_users) if iterations_used is None else int(iterations_used)
    nr, k, nc = int(n_rx), int(k_users), int(n_cps)
    c = constants
    per_eval = c.mmse * nr * k * k + c.inverse * k ** 3 + c.rate * nr * k
    return i * per_eval + c.qr * nr * k * k + c.quantize * nr * k * nc
