"""Receiver circuit power model and energy efficiency."""

from dataclasses import dataclass, fields
from enum import Enum

import numpy as np


class Architecture(str, Enum):
    FD = "FD"
    FVPS = "FVPS"
    FCPS = "FCPS"
    PROPOSED = "PROPOSED"


@dataclass(frozen=True)
class ComponentPowers:
    """Per-component powers in milliwatts (defaults are typical 60 GHz component figures)."""

    p_lna: float = 20.0
    p_vps: float = 30.0
    p_c: float = 19.5
    p_sp: float = 19.5
    p_sw: float = 5.0
    p_cps: float = 5.0
    p_rfc: float = 40.0
    p_bb: float = 200.0
    p_adc: float = 200.0

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"{f.name} must be nonnegative")

    @classmethod
    def keys(cls):
        return [f.name for f in fields(cls)]


@dataclass(frozen=True)
class ArchitectureSpec:
    kind: Architecture
    n_rx: int
    k_users: int
    n_cps: int = 8
    active_per_chain: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", Architecture(self.kind))
        if self.n_rx < 1 or self.k_users < 1:
            raise ValueError("n_rx and k_users must be >= 1")
        if self.kind is Architecture.PROPOSED:
            lk = tuple(int(x) for x in self.active_per_chain)
            if len(lk) != self.k_users:
                raise ValueError("PROPOSED needs one active-switch count per RF chain")
            if any(not 1 <= x <= self.n_rx for x in lk):
                raise ValueError("active switch counts must lie in [1, n_rx]")
            object.__setattr__(self, "active_per_chain", lk)

    @classmethod
    def proposed(cls, n_rx, k_users, n_cps, active_per_chain):
        lk = np.broadcast_to(np.asarray(active_per_chain), (k_users,))
        return cls(Architecture.PROPOSED, n_rx, k_users, n_cps, tuple(lk.tolist()))


def total_power_mw(spec, powers=ComponentPowers()):
    nr, k, nc = spec.n_rx, spec.k_users, spec.n_cps
    p = powers
    if spec.kind is Architecture.FD:
        return nr * (p.p_lna + p.p_rfc + p.p_adc) + p.p_bb
    if spec.kind is Architecture.FVPS:
        return (nr * (p.p_lna + p.p_sp + k * p.p_vps)
                + k * (p.p_rfc + p.p_c + p.p_adc) + p.p_bb)
    per_chain = nc * p.p_cps + p.p_c * (nc + 1) + p.p_rfc + p.p_adc
    if spec.kind is Architecture.FCPS:
        return nr * (p.p_lna + p.p_sp + k * p.p_sw) + k * per_chain + p.p_bb
    switches = sum(spec.active_per_chain) * p.p_sw
    return nr * (p.p_lna + p.p_sp) + switches + k * per_chain + p.p_bb


def total_power(spec, powers=ComponentPowers()):
    """Total circuit power in watts."""
    return total_power_mw(spec, powers) / 1000.0


def energy_efficiency(sum_rate, p_total):
    """Bits/s/Hz per watt."""
    if not p_total > 0:
        raise ValueError("total power must be positive")
    return sum_rate / p_total


def table2(powers=ComponentPowers(), n_cps=8):
    """Rows ``(label, n_rx, k_users, watts)`` of the architecture power table."""
    rows = []
    grid = [(nr, k) for nr in (64, 128) for k in (4, 16)]
    for kind in (Architecture.FD, Architecture.FVPS, Architecture.FCPS):
        for nr, k in grid:
            rows.append((kind.value, nr, k, total_power(ArchitectureSpec(kind, nr, k, n_cps), powers)))
    for frac in (0.5, 0.75):
        for nr, k in grid:
            spec = ArchitectureSpec.proposed(nr, k, n_cps, int(round(frac * nr)))
            rows.append((f"PROPOSED L={frac:g}Nr", nr, k, total_power(spec, powers)))
    return rows
