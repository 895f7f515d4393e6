"""Command-line entry point: ``hybrid-ass {sweep,table2,fig,channels}``."""

import argparse
import logging
import sys

import numpy as np

from . import kernels
from .channel import ChannelConfig, dump_channels, generate_channel, trial_rng
from .errors import ConfigError
from .harness.config import load_config
from .harness.output import complexity_records, write_complexity, write_results
from .harness.presets import figure_config
from .harness.runner import run_sweep
from .power import ComponentPowers, table2


def _add_run_flags(p):
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--trials", type=int, help="override trial count")
    p.add_argument("--seed", type=int, help="override RNG seed")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads (0 = auto); never changes the output")


def _progress(done, total):
    if done == total or done % max(1, total // 10) == 0:
        print(f"  {done}/{total} trials", file=sys.stderr)


def _run(cfg, args):
    cfg = cfg.with_overrides(trials=args.trials, seed=args.seed, out=args.out)
    cfg.validate()
    out = cfg.out or "results.csv"
    rows = run_sweep(cfg, threads=args.threads, progress=_progress)
    write_results(rows, out)
    print(f"wrote {len(rows)} rows to {out}")
    return rows, out


def cmd_sweep(args):
    _run(load_config(args.config), args)


def cmd_table2(args):
    print(f"{'architecture':<22}{'Nr':>5}{'K':>4}{'power [W]':>12}")
    for label, nr, k, watts in table2(ComponentPowers(), n_cps=args.n_cps):
        print(f"{label:<22}{nr:>5}{k:>4}{watts:>12.2f}")


def cmd_fig(args):
    cfg = figure_config(args.number)
    rows, out = _run(cfg, args)
    if args.number == 10:
        sizes = [(nr, k, nc) for nr in cfg.n_rx for k in cfg.k_users for nc in cfg.n_cps]
        path = out[:-4] + "_flops.csv" if out.endswith(".csv") else out + "_flops.csv"
        write_complexity(complexity_records(rows, sizes), path)
        print(f"wrote complexity table to {path}")


def cmd_channels(args):
    cfg = ChannelConfig(n_rx=args.n_rx, n_users=args.k_users, n_paths=args.n_paths,
                        spacing_ratio=args.spacing_ratio, seed=args.seed)
    recs = [(cfg, t, generate_channel(cfg, trial_rng(args.seed, t)).h)
            for t in range(args.count)]
    dump_channels(args.out, recs)
    print(f"wrote {len(recs)} channel records to {args.out}")


def build_parser():
    parser = argparse.ArgumentParser(prog="hybrid-ass", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a sweep from a TOML config")
    p.add_argument("--config", required=True)
    _add_run_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table2", help="print the architecture power table")
    p.add_argument("--n-cps", type=int, default=8)
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("fig", help="run a numbered preset sweep (3-10)")
    p.add_argument("number", type=int, choices=range(3, 11))
    _add_run_flags(p)
    p.set_defaults(func=cmd_fig)

    p = sub.add_parser("channels", help="dump channel realizations as JSON lines")
    p.add_argument("--out", required=True)
    p.add_argument("--n-rx", type=int, default=64)
    p.add_argument("--k-users", type=int, default=16)
    p.add_argument("--n-paths", type=int, default=15)
    p.add_argument("--spacing-ratio", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=cmd_channels)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    logging.getLogger(__name__).info("kernel backend: %s", kernels.backend_name())
    try:
        args.func(args)
    except (ConfigError, np.linalg.LinAlgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
