"""Computational qubit with the correction qubit folded into a level shift.

The correction qubit sits in its excited state, so the interaction acts on the
computational qubit as ``V |e><e|``. One period is pulse / wait / pulse / wait
with durations ``T1, T2, T1, T2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    SIGMA_X,
    FidelitySeries,
    PiecewiseSchedule,
    Segment,
    basis,
    expm_hermitian,
    projector,
    stroboscopic_states,
)

MAX_PERIODS = 10_000


class Gating(str, Enum):
    """When the interaction is active."""

    GATED = "gated"  # wait intervals only
    ALWAYS = "always"  # pulses and waits

    @classmethod
    def coerce(cls, value) -> "Gating":
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"gating must be one of {[g.value for g in cls]}, got {value!r}") from None


@dataclass(frozen=True)
class TwoLevelConfig:
    """Sequence parameters as the dimensionless products used on plot axes.

    eps is the rotation-angle error (``Omega T1 = pi (1 + eps)``), delta_t1 the
    detuning times the pulse length and phi the interaction phase ``V T2``.
    Raw rates are derived properties.
    """

    eps: float = 0.0
    delta_t1: float = 0.0
    phi: float = 0.0
    t1: float = 1.0
    t2: float = 10.0
    gating: Gating = Gating.GATED
    n_periods: int = 50

    def __post_init__(self):
        object.__setattr__(self, "gating", Gating.coerce(self.gating))
        if not self.t1 > 0:
            raise ValueError("t1 must be positive")
        if not self.t2 > 0:
            raise ValueError("t2 must be positive")
        if not 1 <= int(self.n_periods) <= MAX_PERIODS:
            raise ValueError(f"n_periods must be in 1..{MAX_PERIODS}")
        object.__setattr__(self, "n_periods", int(self.n_periods))

    @property
    def rabi(self) -> float:
        return math.pi * (1.0 + self.eps) / self.t1

    @property
    def delta(self) -> float:
        return self.delta_t1 / self.t1

    @property
    def V(self) -> float:
        return self.phi / self.t2

    @property
    def period(self) -> float:
        return 2.0 * (self.t1 + self.t2)


DIM = 2
GROUND, EXCITED = 0, 1
P_E = projector(DIM, EXCITED)
LABELS = ("P_g", "P_e")


def pulse_hamiltonian(cfg: TwoLevelConfig) -> np.ndarray:
    H = -cfg.delta * P_E + 0.5 * cfg.rabi * SIGMA_X
    if cfg.gating is Gating.ALWAYS:
        H = H + cfg.V * P_E
    return H


def wait_hamiltonian(cfg: TwoLevelConfig) -> np.ndarray:
    return cfg.V * P_E


def build_schedule(cfg: TwoLevelConfig) -> PiecewiseSchedule:
    pulse, wait = pulse_hamiltonian(cfg), wait_hamiltonian(cfg)
    return PiecewiseSchedule(
        (
            Segment(cfg.t1, pulse, "pulse"),
            Segment(cfg.t2, wait, "wait"),
            Segment(cfg.t1, pulse, "pulse"),
            Segment(cfg.t2, wait, "wait"),
        ),
        dim=DIM,
    )


def initial_state(cfg: TwoLevelConfig | None = None) -> np.ndarray:
    return basis(DIM, GROUND)


def populations(states: np.ndarray) -> np.ndarray:
    return np.abs(np.asarray(states)) ** 2


def infidelity(states: np.ndarray) -> np.ndarray:
    # excited population directly, avoids cancellation in 1 - F
    return np.abs(np.asarray(states)[..., EXCITED]) ** 2


def fidelity(states: np.ndarray) -> np.ndarray:
    return np.abs(np.asarray(states)[..., GROUND]) ** 2


def fidelity_series(cfg: TwoLevelConfig) -> FidelitySeries:
    """``F1(kT) = |<g|psi(kT)>|^2`` for ``k = 1..n`` starting from ``|g>``."""
    U = build_schedule(cfg).period_propagator()
    states = stroboscopic_states(U, initial_state(), cfg.n_periods)[1:]
    return FidelitySeries(np.arange(1, cfg.n_periods + 1), fidelity(states), infidelity(states))


def analytic_fidelity_rotation(eps, phi):
    """Closed-form ``F1(T)`` for the rotation-angle error as published.

    Note that direct propagation of the model gives ``sin^2(pi eps)`` where this
    expression has ``sin^2(2 pi eps)``; both share the ``1 + cos(phi)`` factor
    that vanishes at the magic phase.
    """
    eps, phi = np.asarray(eps, float), np.asarray(phi, float)
    return 1.0 - 0.5 * np.sin(2.0 * np.pi * eps) ** 2 * (1.0 + np.cos(phi))


def analytic_fidelity_detuning(eps, V, T2):
    """Small-eps approximation of ``F1(T)`` for a detuning ``delta T1 = pi eps``.

    Only an approximation: the ``(2 T2 + 1)`` factor treats T2 in units of T1.
    """
    eps, phase = np.asarray(eps, float), np.asarray(V, float) * T2
    return (
        1.0
        - 2.0 * eps**2 * (1.0 - np.cos(phase))
        - np.pi * eps**3 * (2.0 * T2 + 1.0) * np.sin(phase)
    )


def magic_identity_residual(eps: float, omega_scale: float = 1.0, phi: float = math.pi) -> float:
    """Max-norm of ``U(T) - I`` for the gated, resonant sequence.

    ``U(T) = W R W R`` with ``R = exp(-i (Omega T1 / 2) sigma_x)``,
    ``Omega T1 = omega_scale * pi (1 + eps)`` and ``W = exp(-i phi |e><e|)``.
    """
    area = omega_scale * math.pi * (1.0 + eps)
    R = expm_hermitian(0.5 * SIGMA_X, area)
    W = expm_hermitian(P_E, phi)
    U = W @ R @ W @ R
    return float(np.max(np.abs(U - np.eye(DIM))))
