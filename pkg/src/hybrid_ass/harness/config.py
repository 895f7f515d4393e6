"""Experiment configuration: flat TOML key-value files with list-valued axes.

Example::

    n_rx = [64]
    k_users = [16]
    n_cps = [8]
    snr_db = [0.0]
    algorithms = ["FCPS", "CM_ASS_FIXED"]
    l_values = [32, 48]
    l_fractions = [0.75]
    trials = 100
    t_max = 5
    seed = 1
    n_paths = 15
    spacing_ratio = 0.5
    out = "fig3.csv"
    p_sw = 5.0          # any ComponentPowers field overrides the default
"""

from dataclasses import dataclass, field, fields, replace

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from ..channel import DEFAULT_N_PATHS, DEFAULT_SPACING
from ..errors import ConfigError
from ..power import ComponentPowers
from ..selection import DEFAULT_T_MAX, EXHAUSTIVE_MAX_BITS

ALGORITHMS = ("FD", "FVPS_APPROX", "FCPS", "DS_ASS", "CM_ASS_DYNAMIC",
              "CM_ASS_FIXED", "EXHAUSTIVE")
SEARCHES = ("DS_ASS", "CM_ASS_DYNAMIC", "EXHAUSTIVE")


@dataclass(frozen=True)
class ExperimentConfig:
    n_rx: tuple = (64,)
    k_users: tuple = (16,)
    n_cps: tuple = (8,)
    snr_db: tuple = (0.0,)
    algorithms: tuple = ("FCPS",)
    l_values: tuple = ()
    l_fractions: tuple = ()
    trials: int = 100
    t_max: int = DEFAULT_T_MAX
    seed: int = 0
    n_paths: int = DEFAULT_N_PATHS
    spacing_ratio: float = DEFAULT_SPACING
    out: str = None
    powers: ComponentPowers = field(default_factory=ComponentPowers)

    def __post_init__(self):
        for name in ("n_rx", "k_users", "n_cps", "snr_db", "algorithms",
                     "l_values", "l_fractions"):
            val = getattr(self, name)
            if isinstance(val, (str, int, float)):
                val = (val,)
            object.__setattr__(self, name, tuple(val))
        object.__setattr__(self, "algorithms",
                           tuple(str(a).upper() for a in self.algorithms))
        self.validate()

    def validate(self):
        for name in ("n_rx", "k_users", "n_cps", "snr_db", "algorithms"):
            if not getattr(self, name):
                raise ConfigError(f"{name} must not be empty")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ConfigError(f"unknown algorithms {sorted(unknown)}; choose from {ALGORITHMS}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.t_max < 1:
            raise ConfigError("t_max must be >= 1")
        if self.n_paths < 1 or not self.spacing_ratio > 0:
            raise ConfigError("n_paths must be >= 1 and spacing_ratio > 0")
        if min(self.n_rx) < 1 or min(self.k_users) < 1 or min(self.n_cps) < 1:
            raise ConfigError("n_rx, k_users and n_cps values must be >= 1")
        if max(self.k_users) > min(self.n_rx):
            raise ConfigError("every swept k_users must be <= every swept n_rx")
        if "EXHAUSTIVE" in self.algorithms and max(self.n_rx) * max(self.k_users) > EXHAUSTIVE_MAX_BITS:
            raise ConfigError(f"EXHAUSTIVE needs n_rx * k_users <= {EXHAUSTIVE_MAX_BITS}")
        if "CM_ASS_FIXED" in self.algorithms and not (self.l_values or self.l_fractions):
            raise ConfigError("CM_ASS_FIXED needs l_values or l_fractions")
        for l in self.l_values:
            if not 1 <= int(l) <= min(self.n_rx):
                raise ConfigError(f"l_values entry {l} outside [1, min(n_rx)]")
        for f in self.l_fractions:
            if not 0 < f <= 1:
                raise ConfigError(f"l_fractions entry {f} outside (0, 1]")
            if int(round(f * min(self.n_rx))) < 1:
                raise ConfigError(f"l_fractions entry {f} rounds to L = 0")

    def fixed_l(self, n_rx):
        """Sorted distinct ``L`` values for CM_ASS_FIXED at this array size."""
        ls = {int(l) for l in self.l_values}
        ls |= {int(round(f * n_rx)) for f in self.l_fractions}
        return sorted(ls)

    def with_overrides(self, **kw):
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


def config_from_dict(d):
    d = dict(d)
    power_keys = set(ComponentPowers.keys())
    overrides = {k: float(d.pop(k)) for k in list(d) if k in power_keys}
    known = {f.name for f in fields(ExperimentConfig)} - {"powers"}
    extra = set(d) - known
    if extra:
        raise ConfigError(f"unknown config keys: {sorted(extra)}")
    try:
        return ExperimentConfig(powers=ComponentPowers(**overrides), **d)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def load_config(path):
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    return config_from_dict(data)
