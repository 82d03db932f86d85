"""Interaction-based compensation of unitary qubit errors.

Propagates driven qubit models through repeated excite/wait/de-excite/wait
periods, tracks the ground-state fidelity at multiples of the period, and
searches for interaction phases that cancel the drive error.
"""
from .core import FidelitySeries, IntegrationError, PiecewiseSchedule, Segment
from .dicke import DickeConfig
from .fourier import DegenerateReference, fourier_metric, scan2d, sideband_frequencies, spectrum
from .models import fidelity_series, infidelity_at, trajectory
from .stirap import StirapConfig
from .sweep import MagicSearchError, SweepGrid, fidelity_vs_n, infidelity_grid, locate_magic
from .twolevel import Gating, TwoLevelConfig

__version__ = "0.1.0"

__all__ = [
    "DegenerateReference",
    "DickeConfig",
    "FidelitySeries",
    "Gating",
    "IntegrationError",
    "MagicSearchError",
    "PiecewiseSchedule",
    "Segment",
    "StirapConfig",
    "SweepGrid",
    "TwoLevelConfig",
    "fidelity_series",
    "fidelity_vs_n",
    "fourier_metric",
    "infidelity_at",
    "infidelity_grid",
    "locate_magic",
    "scan2d",
    "sideband_frequencies",
    "spectrum",
    "trajectory",
]
