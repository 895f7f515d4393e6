"""Geometric narrowband mmWave channel for a ULA base station."""

import json
from dataclasses import asdict, dataclass

import numpy as np

DEFAULT_N_PATHS = 15
DEFAULT_SPACING = 0.5


@dataclass(frozen=True)
class ChannelConfig:
    n_rx: int
    n_users: int
    n_paths: int = DEFAULT_N_PATHS
    spacing_ratio: float = DEFAULT_SPACING
    seed: int = 0

    def __post_init__(self):
        if self.n_rx < 1 or self.n_users < 1 or self.n_paths < 1:
            raise ValueError("n_rx, n_users and n_paths must all be >= 1")
        if not self.spacing_ratio > 0:
            raise ValueError("spacing_ratio must be positive")


@dataclass(frozen=True)
class ChannelRealization:
    h: np.ndarray           # (n_rx, n_users)
    path_gains: np.ndarray  # (n_users, n_paths)
    aoas: np.ndarray        # (n_users, n_paths), radians in [0, 2pi)


def array_response(phi, n_rx, spacing_ratio=DEFAULT_SPACING):
    """Unit-norm ULA steering vector(s).

    ``phi`` may be an array; the antenna index is then the leading axis of
    the result.
    """
    if n_rx < 1:
        raise ValueError("n_rx must be >= 1")
    phi = np.asarray(phi, dtype=np.float64)
    n = np.arange(n_rx).reshape((n_rx,) + (1,) * phi.ndim)
    return np.exp(2j * np.pi * n * spacing_ratio * np.sin(phi)) / np.sqrt(n_rx)


def channel_from_paths(path_gains, aoas, n_rx, spacing_ratio=DEFAULT_SPACING):
    """Assemble ``H`` with ``h_k = sqrt(Nr/Np) * sum_l a(phi_lk) alpha_lk``."""
    path_gains = np.asarray(path_gains, dtype=np.complex128)
    n_paths = path_gains.shape[1]
    a = array_response(aoas, n_rx, spacing_ratio)  # (n_rx, K, Np)
    return np.sqrt(n_rx / n_paths) * (a * path_gains[None]).sum(axis=2)


def generate_channel(cfg, rng):
    """Draw one realization: CN(0,1) path gains, AoAs uniform on [0, 2pi)."""
    shape = (cfg.n_users, cfg.n_paths)
    gains = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    aoas = rng.uniform(0.0, 2.0 * np.pi, size=shape)
    h = channel_from_paths(gains, aoas, cfg.n_rx, cfg.spacing_ratio)
    return ChannelRealization(h=h, path_gains=gains, aoas=aoas)


def trial_rng(seed, trial):
    """Independent counter-based stream for Monte-Carlo trial ``trial``."""
    ss = np.random.SeedSequence(seed, spawn_key=(trial,))
    return np.random.Generator(np.random.Philox(ss))


# --- channel dump files (JSON lines) -------------------------------------

def dump_channels(path, records):
    """Write ``(cfg, trial, h)`` records, one JSON object per line.

    ``h`` is flattened row-major as interleaved real/imag doubles.
    """
    with open(path, "w") as fh:
        for cfg, trial, h in records:
            h = np.asarray(h, dtype=np.complex128)
            flat = np.column_stack([h.real.ravel(), h.imag.ravel()]).ravel()
            rec = {"seed": cfg.seed, "trial": trial, "cfg": asdict(cfg),
                   "h": [float(x) for x in flat]}
            fh.write(json.dumps(rec) + "\n")


def load_channels(path):
    out = []
    with open(path) as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            cfg = ChannelConfig(**rec["cfg"])
            flat = np.asarray(rec["h"], dtype=np.float64)
            h = (flat[0::2] + 1j * flat[1::2]).reshape(cfg.n_rx, cfg.n_users)
            out.append((cfg, rec["trial"], h))
    return out
