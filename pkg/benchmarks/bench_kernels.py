"""Time the numba and pure-numpy kernel backends on the hot loops.

Usage::

    python benchmarks/bench_kernels.py [--repeat 3]

The first numba call of each kernel is excluded (JIT warm-up).
"""

import argparse
import time

import numpy as np

from hybrid_ass import kernels
from hybrid_ass.channel import ChannelConfig, generate_channel, trial_rng
from hybrid_ass.numerics import qr_thin
from hybrid_ass.rf import CpsCodebook, build_unselected_abf
from hybrid_ass.selection import SearchConfig, cm_ass_dynamic, ds_ass, exhaustive_ass


def _instance(n_rx, k):
    h = generate_channel(ChannelConfig(n_rx=n_rx, n_users=k), trial_rng(0, 0)).h
    h_hat, _ = qr_thin(h)
    return h, h_hat


def _cases():
    cfg = SearchConfig(snr_linear=1.0, codebook=CpsCodebook(8))
    h8, hh8 = _instance(8, 2)
    h64, hh64 = _instance(64, 8)
    _, w64 = build_unselected_abf(hh64, cfg.codebook)
    batch = (np.random.default_rng(0).random((2048, 64, 8)) < 0.7).astype(np.uint8)
    batch[:, 0, :] = 1
    return [
        ("batch_sum_rate 2048 x (64x8)",
         lambda: kernels.get_backend().batch_sum_rate(w64, batch, np.ascontiguousarray(h64), 1.0)),
        ("exhaustive 8x2", lambda: exhaustive_ass(h8, hh8, cfg)),
        ("ds_ass 64x8", lambda: ds_ass(h64, hh64, cfg)),
        ("cm_ass_dynamic 64x8", lambda: cm_ass_dynamic(h64, hh64, cfg)),
    ]


def _time(fn, repeat):
    fn()
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    results = {}
    for name in kernels.BACKENDS:
        prev = kernels.set_backend(name)
        try:
            for label, fn in _cases():
                results.setdefault(label, {})[name] = _time(fn, args.repeat)
        finally:
            kernels.set_backend(prev)
    print(f"{'kernel':<32}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for label, t in results.items():
        print(f"{label:<32}{t['numba']:>12.4f}{t['numpy']:>12.4f}{t['numpy'] / t['numba']:>9.1f}x")


if __name__ == "__main__":
    main()
