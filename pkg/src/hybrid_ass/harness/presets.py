"""Numbered preset sweeps for the `fig` subcommand, sized to run on a desktop."""

from .config import ExperimentConfig

_ALL = ("FD", "FVPS_APPROX", "FCPS", "DS_ASS", "CM_ASS_DYNAMIC", "CM_ASS_FIXED")
_HALF_3Q = (0.5, 0.75)

FIGURES = {
    3: dict(n_rx=(64,), k_users=(16,), n_cps=(8,), snr_db=(0.0,),
            algorithms=("FCPS", "CM_ASS_FIXED"), l_values=tuple(range(4, 65, 4)),
            trials=100),
    4: dict(n_rx=(8,), k_users=(2,), n_cps=(8,),
            snr_db=(-10.0, -5.0, 0.0, 5.0, 10.0, 12.0, 15.0, 20.0),
            algorithms=("FCPS", "EXHAUSTIVE", "DS_ASS", "CM_ASS_DYNAMIC", "CM_ASS_FIXED"),
            l_fractions=_HALF_3Q, trials=200),
    5: dict(n_rx=(64,), k_users=(16,), n_cps=(8,), snr_db=(-10.0, -5.0, 0.0, 5.0, 10.0),
            algorithms=_ALL, l_fractions=_HALF_3Q, trials=20),
    6: dict(n_rx=(64,), k_users=(16,), n_cps=(4, 6, 8, 12, 16, 24, 32), snr_db=(0.0,),
            algorithms=_ALL, l_fractions=_HALF_3Q, trials=20),
    7: dict(n_rx=(64,), k_users=(2, 4, 6, 8, 10, 12, 14, 16), n_cps=(8,), snr_db=(0.0,),
            algorithms=_ALL, l_fractions=_HALF_3Q, trials=20),
    9: dict(n_rx=(16, 32, 64, 128), k_users=(4, 8), n_cps=(8,), snr_db=(0.0,),
            algorithms=_ALL, l_fractions=_HALF_3Q, trials=20),
    10: dict(n_rx=(8, 16, 32, 64), k_users=(4,), n_cps=(8,), snr_db=(0.0,),
             algorithms=("DS_ASS", "CM_ASS_DYNAMIC", "CM_ASS_FIXED"),
             l_fractions=_HALF_3Q, trials=20),
}
FIGURES[8] = dict(FIGURES[7])  # EE versus K: same sweep, read the mean_ee column


def figure_config(number, seed=1):
    if number not in FIGURES:
        raise KeyError(f"no preset for figure {number}; choose from {sorted(FIGURES)}")
    return ExperimentConfig(seed=seed, out=f"fig{number}.csv", **FIGURES[number])
