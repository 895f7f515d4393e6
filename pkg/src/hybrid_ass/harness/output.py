"""CSV writers for sweep results and complexity tables."""

import csv

from .complexity import analytic_iterations, estimate_flops

RESULT_HEADER = ("algorithm", "n_rx", "k_users", "n_cps", "snr_db", "l_param",
                 "mean_se", "se_stderr", "mean_power_w", "mean_ee", "mean_l_used", "trials")
_INT_FIELDS = {"n_rx", "k_users", "n_cps", "l_param", "trials"}

COMPLEXITY_HEADER = ("algorithm", "n_rx", "k_users", "n_cps", "l_param",
                     "mean_evaluations", "analytic_iterations", "flops_measured",
                     "flops_analytic")


def _fmt(name, value):
    if name == "algorithm":
        return str(value)
    if name in _INT_FIELDS:
        return str(int(value))
    return f"{float(value):.6g}"


def _write(path, header, records):
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(records)
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def write_results(rows, path):
    if not rows:
        raise ValueError("no result rows to write")
    rows = sorted(rows, key=lambda r: r.sort_key())
    _write(path, RESULT_HEADER,
           [[_fmt(f, getattr(r, f)) for f in RESULT_HEADER] for r in rows])


def read_results(path):
    """Parse a results CSV back into dicts of typed values."""
    out = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            out.append({k: (v if k == "algorithm" else int(v) if k in _INT_FIELDS else float(v))
                        for k, v in rec.items()})
    return out


def complexity_records(rows, exhaustive_sizes=()):
    """Flop-count table from selection rows of a sweep.

    Measured counts use ``i = mean evaluations + 1`` (the initial all-active
    rate included); CM_ASS_FIXED evaluates exactly one selection.
    ``exhaustive_sizes`` adds analytic-only rows for ``(n_rx, k_users, n_cps)``.
    """
    recs = []
    for r in rows:
        if r.algorithm not in ("DS_ASS", "CM_ASS_DYNAMIC", "CM_ASS_FIXED"):
            continue
        mean_ev = float(r.per_trial_evaluations.mean())
        i_meas = 1 if r.algorithm == "CM_ASS_FIXED" else mean_ev + 1
        recs.append((r.algorithm, r.n_rx, r.k_users, r.n_cps, r.l_param, mean_ev,
                     analytic_iterations(r.algorithm, r.n_rx, r.k_users),
                     estimate_flops(r.algorithm, r.n_rx, r.k_users, r.n_cps, round(i_meas)),
                     estimate_flops(r.algorithm, r.n_rx, r.k_users, r.n_cps)))
    for n_rx, k_users, n_cps in exhaustive_sizes:
        i = analytic_iterations("EXHAUSTIVE", n_rx, k_users)
        f = estimate_flops("EXHAUSTIVE", n_rx, k_users, n_cps)
        recs.append(("EXHAUSTIVE", n_rx, k_users, n_cps, -1, float("nan"), i, f, f))
    # dedupe across SNR points: keep first per (algorithm, n_rx, k_users, n_cps, l)
    seen, uniq = set(), []
    for rec in sorted(recs, key=lambda x: x[:5]):
        if rec[:5] not in seen:
            seen.add(rec[:5])
            uniq.append(rec)
    return uniq


def write_complexity(records, path):
    def fmt(rec):
        alg, nr, k, nc, l, ev, ia, fm, fa = rec
        return [alg, nr, k, nc, l, f"{ev:.6g}", ia, fm, fa]
    _write(path, COMPLEXITY_HEADER, [fmt(r) for r in records])
