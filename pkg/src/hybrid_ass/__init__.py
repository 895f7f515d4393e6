"""Hybrid analog/digital uplink combining with per-RF-chain antenna subset
selection over constant phase shifters and on/off switches."""

from .channel import ChannelConfig, array_response, generate_channel
from .combining import effective_channel, link_metrics, mmse_combiner, sinr, sum_rate
from .numerics import qr_thin, solve_hpd
from .power import Architecture, ArchitectureSpec, ComponentPowers, energy_efficiency, total_power
from .rf import CpsCodebook, apply_selection, build_unselected_abf, quantize_phase
from .selection import (SearchConfig, SelectionResult, cm_ass_dynamic, cm_ass_fixed,
                        ds_ass, exhaustive_ass, fcps_selection)

__version__ = "0.1.0"
