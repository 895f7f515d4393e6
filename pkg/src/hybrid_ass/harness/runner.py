"""Seeded Monte-Carlo sweeps with paired trials.

Every algorithm at a grid point sees the same channel realization of trial
``t``, drawn from the stream derived from ``(seed, t)``. Trials are farmed
out to a thread pool; results are reduced in trial order, so the output is
independent of the worker count.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..channel import ChannelConfig, generate_channel, trial_rng
from ..errors import DegenerateChannelError
from ..numerics import qr_thin
from ..power import Architecture, ArchitectureSpec, energy_efficiency, total_power
from ..rf import CpsCodebook, build_unselected_abf
from ..selection import (SearchConfig, cm_ass_dynamic, cm_ass_fixed, ds_ass,
                         exhaustive_ass, fcps_selection, selection_rate)
from .baselines import baseline_fd, baseline_fvps_approx

log = logging.getLogger(__name__)

MAX_REDRAWS = 100


@dataclass
class ResultRow:
    algorithm: str
    n_rx: int
    k_users: int
    n_cps: int
    snr_db: float
    l_param: int
    mean_se: float
    se_stderr: float
    mean_power_w: float
    mean_ee: float
    mean_l_used: float
    trials: int
    per_trial_se: np.ndarray = field(default=None, repr=False)
    per_trial_power_w: np.ndarray = field(default=None, repr=False)
    per_trial_evaluations: np.ndarray = field(default=None, repr=False)

    def sort_key(self):
        return (self.algorithm, self.n_rx, self.k_users, self.n_cps, self.snr_db, self.l_param)


def draw_channel(cfg, n_rx, k_users, trial):
    """Channel and its orthonormal factor for one trial; redraws degenerate ones."""
    ccfg = ChannelConfig(n_rx=n_rx, n_users=k_users, n_paths=cfg.n_paths,
                         spacing_ratio=cfg.spacing_ratio, seed=cfg.seed)
    rng = trial_rng(cfg.seed, trial)
    for _ in range(MAX_REDRAWS):
        h = generate_channel(ccfg, rng).h
        try:
            h_hat, _ = qr_thin(h)
        except DegenerateChannelError:
            log.warning("degenerate channel in trial %d, redrawing", trial)
            continue
        return h, h_hat
    raise DegenerateChannelError(f"{MAX_REDRAWS} degenerate draws in a row")


def _proposed_power(cfg, n_rx, k_users, n_cps, s):
    spec = ArchitectureSpec.proposed(n_rx, k_users, n_cps, s.sum(axis=0))
    return total_power(spec, cfg.powers)


def _fixed_power(cfg, kind, n_rx, k_users, n_cps):
    return total_power(ArchitectureSpec(kind, n_rx, k_users, n_cps), cfg.powers)


def run_trial(cfg, trial):
    """All grid points and algorithms for one trial.

    Returns ``{key: (se, power_w, l_used, evaluations)}`` with
    ``key = (algorithm, n_rx, k_users, n_cps, snr_db, l_param)``.
    """
    out = {}
    algs = cfg.algorithms
    for n_rx in cfg.n_rx:
        for k_users in cfg.k_users:
            h, h_hat = draw_channel(cfg, n_rx, k_users, trial)
            fd_rate = {}
            for n_cps in cfg.n_cps:
                codebook = CpsCodebook(n_cps)
                _, w_tilde = build_unselected_abf(h_hat, codebook)
                for snr_db in cfg.snr_db:
                    snr = 10.0 ** (snr_db / 10.0)
                    scfg = SearchConfig(snr_linear=snr, codebook=codebook, t_max=cfg.t_max)

                    def put(alg, se, power, l_used, evals=0, l_param=-1):
                        out[(alg, n_rx, k_users, n_cps, snr_db, l_param)] = (se, power, l_used, evals)

                    if "FD" in algs:
                        if snr_db not in fd_rate:
                            fd_rate[snr_db] = baseline_fd(h, snr)
                        put("FD", fd_rate[snr_db],
                            _fixed_power(cfg, Architecture.FD, n_rx, k_users, n_cps), 1.0)
                    if "FVPS_APPROX" in algs:
                        put("FVPS_APPROX", baseline_fvps_approx(h, h_hat, snr),
                            _fixed_power(cfg, Architecture.FVPS, n_rx, k_users, n_cps), float(n_rx))
                    if "FCPS" in algs:
                        se = selection_rate(w_tilde, fcps_selection(n_rx, k_users), h, snr)
                        put("FCPS", se, _fixed_power(cfg, Architecture.FCPS, n_rx, k_users, n_cps),
                            float(n_rx), 0)
                    for alg, fn in (("DS_ASS", ds_ass), ("CM_ASS_DYNAMIC", cm_ass_dynamic),
                                    ("EXHAUSTIVE", exhaustive_ass)):
                        if alg in algs:
                            res = fn(h, h_hat, scfg)
                            put(alg, res.sum_rate,
                                _proposed_power(cfg, n_rx, k_users, n_cps, res.s_star),
                                float(res.s_star.sum(axis=0).mean()), res.evaluations)
                    if "CM_ASS_FIXED" in algs:
                        for l in cfg.fixed_l(n_rx):
                            s = cm_ass_fixed(h_hat, l)
                            put("CM_ASS_FIXED", selection_rate(w_tilde, s, h, snr),
                                _proposed_power(cfg, n_rx, k_users, n_cps, s), float(l), 0, l)
    return out


def _aggregate(key, per_trial):
    se = np.array([p[0] for p in per_trial])
    pw = np.array([p[1] for p in per_trial])
    lu = np.array([p[2] for p in per_trial])
    ev = np.array([p[3] for p in per_trial])
    n = se.size
    stderr = float(se.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    ee = np.array([energy_efficiency(r, p) for r, p in zip(se, pw)])
    alg, n_rx, k_users, n_cps, snr_db, l_param = key
    return ResultRow(alg, n_rx, k_users, n_cps, snr_db, l_param,
                     mean_se=float(se.mean()), se_stderr=stderr,
                     mean_power_w=float(pw.mean()), mean_ee=float(ee.mean()),
                     mean_l_used=float(lu.mean()), trials=n,
                     per_trial_se=se, per_trial_power_w=pw, per_trial_evaluations=ev)


def resolve_threads(threads):
    if threads is None or threads <= 0:
        return os.cpu_count() or 1
    return int(threads)


def run_sweep(cfg, threads=1, progress=None):
    """Run every grid point and algorithm of ``cfg``; returns sorted rows."""
    cfg.validate()
    n_workers = resolve_threads(threads)
    trials = range(cfg.trials)
    if n_workers == 1:
        results = map(lambda t: run_trial(cfg, t), trials)
    else:
        pool = ThreadPoolExecutor(max_workers=n_workers)
        results = pool.map(lambda t: run_trial(cfg, t), trials)
    collected = {}
    try:
        for t, res in enumerate(results):  # trial order
            for key, val in res.items():
                collected.setdefault(key, []).append(val)
            if progress is not None:
                progress(t + 1, cfg.trials)
    finally:
        if n_workers != 1:
            pool.shutdown()
    rows = [_aggregate(key, vals) for key, vals in collected.items()]
    rows.sort(key=ResultRow.sort_key)
    return rows
