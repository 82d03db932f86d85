"""Ladder-type three-level qubits driven by a double-STIRAP sequence.

Per period: a Stokes-before-Pump pair crossing at local ``t = 0`` carries
``|g> -> |e>``, the reversed pair crossing at ``t = T2`` brings it back, and the
next period's forward pair crosses at ``t = 2 T2``. Pulse pairs occupy
``[c - w, c + w]`` around each crossing ``c``; the gaps are wait segments.
Basis order per system is ``|g>, |i>, |e>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    FidelitySeries,
    PiecewiseSchedule,
    Segment,
    basis,
    stroboscopic_states,
)
from .twolevel import MAX_PERIODS, Gating

DIM1 = 3
DIM = DIM1 * DIM1
G, I, E = 0, 1, 2
EE = DIM - 1  # |e1, e2>
LABELS = ("P_g", "P_e", "P_i")
TINY_RABI = 1e-300


class DarkStateUndefined(ValueError):
    pass


@dataclass(frozen=True)
class StirapConfig:
    """Pulse parameters in the usual STIRAP dimensionless units.

    omega_tg, delta_tg and delta2_tg are the peak Rabi frequency and the two
    detunings multiplied by the Gaussian width ``tg``; phi is ``V T2``.
    ``systems=1`` simulates a lone three-level system (no interaction).
    """

    omega_tg: float = 12.0
    delta_tg: float = 1.4
    delta2_tg: float = 0.0
    tg: float = 1.0
    t1: float = 1.2
    t2: float = 10.0
    phi: float = 0.0
    gating: Gating = Gating.ALWAYS
    n_periods: int = 5
    steps_per_tg: int = 500
    window_tg: float = 4.0
    systems: int = 2

    def __post_init__(self):
        object.__setattr__(self, "gating", Gating.coerce(self.gating))
        if self.omega_tg < 0:
            raise ValueError("omega_tg must be non-negative")
        if not self.tg > 0:
            raise ValueError("tg must be positive")
        if self.window_tg < 4.0:
            raise ValueError("window_tg must be at least 4 (Gaussian truncation)")
        if self.t2 < 2 * self.window:
            raise ValueError("t2 must be at least two pulse windows so pairs do not overlap")
        if not 1 <= int(self.n_periods) <= MAX_PERIODS:
            raise ValueError(f"n_periods must be in 1..{MAX_PERIODS}")
        if int(self.steps_per_tg) < 1:
            raise ValueError("steps_per_tg must be positive")
        if self.systems not in (1, 2):
            raise ValueError("systems must be 1 or 2")
        object.__setattr__(self, "n_periods", int(self.n_periods))

    @property
    def omega0(self) -> float:
        return self.omega_tg / self.tg

    @property
    def Delta(self) -> float:
        return self.delta_tg / self.tg

    @property
    def Delta2(self) -> float:
        return self.delta2_tg / self.tg

    @property
    def V(self) -> float:
        return self.phi / self.t2

    @property
    def window(self) -> float:
        return self.window_tg * self.tg

    @property
    def dt_step(self) -> float:
        return self.tg / self.steps_per_tg

    @property
    def period(self) -> float:
        return 2.0 * self.t2


def pump_stokes(t, cfg: StirapConfig, reversed: bool = False):
    """Gaussian Pump and Stokes Rabi frequencies of one pulse pair."""
    t = np.asarray(t, dtype=float)
    if reversed:
        centre_p, centre_s = cfg.t2 - cfg.t1 / 2, cfg.t2 + cfg.t1 / 2
    else:
        centre_p, centre_s = cfg.t1 / 2, -cfg.t1 / 2
    omega_p = cfg.omega0 * np.exp(-(((t - centre_p) / cfg.tg) ** 2))
    omega_s = cfg.omega0 * np.exp(-(((t - centre_s) / cfg.tg) ** 2))
    return omega_p, omega_s


def _ladder(omega_p, omega_s, cfg: StirapConfig) -> np.ndarray:
    omega_p = np.asarray(omega_p, dtype=float)
    H = np.zeros(omega_p.shape + (DIM1, DIM1), dtype=complex)
    H[..., G, I] = H[..., I, G] = omega_p / 2
    H[..., I, E] = H[..., E, I] = np.asarray(omega_s) / 2
    H[..., I, I] = -cfg.Delta
    H[..., E, E] = -cfg.Delta2
    return H


def stirap_hamiltonian(t, cfg: StirapConfig, reversed: bool = False) -> np.ndarray:
    """Single-system Hamiltonian for one pulse pair; stacks over array ``t``."""
    return _ladder(*pump_stokes(t, cfg, reversed), cfg)


def drive_hamiltonian(t, cfg: StirapConfig) -> np.ndarray:
    """Single-system Hamiltonian with both pulse pairs of the period present."""
    fp, fs = pump_stokes(t, cfg, False)
    rp, rs = pump_stokes(t, cfg, True)
    return _ladder(fp + rp, fs + rs, cfg)


def dark_state(t: float, cfg: StirapConfig, reversed: bool = False):
    """Mixing angle and dark state ``cos(theta)|g> - sin(theta)|e>``."""
    omega_p, omega_s = (float(x) for x in pump_stokes(t, cfg, reversed))
    if abs(omega_p) < TINY_RABI and abs(omega_s) < TINY_RABI:
        raise DarkStateUndefined(f"both Rabi frequencies vanish at t={t}")
    theta = math.atan2(omega_p, omega_s)
    return theta, np.array([math.cos(theta), 0.0, -math.sin(theta)], dtype=complex)


def _segments(cfg: StirapConfig, on, off) -> tuple[Segment, ...]:
    w, gap = cfg.window, cfg.t2 - 2 * cfg.window
    return (
        Segment(2 * w, on, "forward"),
        Segment(gap, off, "wait"),
        Segment(2 * w, on, "reverse"),
        Segment(gap, off, "wait"),
    )


def single_schedule(cfg: StirapConfig) -> PiecewiseSchedule:
    def H(t):
        return drive_hamiltonian(t, cfg)

    return PiecewiseSchedule(_segments(cfg, H, H), dim=DIM1, t0=-cfg.window, dt_step=cfg.dt_step)


def _two_system(h: np.ndarray) -> np.ndarray:
    eye = np.eye(DIM1)
    n = h.shape[:-2]
    return (
        np.einsum("...ij,kl->...ikjl", h, eye) + np.einsum("ij,...kl->...ikjl", eye, h)
    ).reshape(n + (DIM, DIM))


def build_schedule(cfg: StirapConfig) -> PiecewiseSchedule:
    """Nine-state schedule: ``H1 x I + I x H2 + V |e1 e2><e1 e2|``."""
    if cfg.systems == 1:
        return single_schedule(cfg)

    def driven(V):
        def H(t):
            out = _two_system(drive_hamiltonian(t, cfg))
            out[..., EE, EE] += V
            return out

        return H

    on = driven(cfg.V if cfg.gating is Gating.ALWAYS else 0.0)
    off = driven(cfg.V)
    return PiecewiseSchedule(_segments(cfg, on, off), dim=DIM, t0=-cfg.window, dt_step=cfg.dt_step)


def initial_state(cfg: StirapConfig) -> np.ndarray:
    return basis(DIM1 if cfg.systems == 1 else DIM, 0)


def populations(states: np.ndarray) -> np.ndarray:
    """``(P_g, P_e, P_i)`` of the first system (reduced if two systems)."""
    p = np.abs(np.asarray(states)) ** 2
    if p.shape[-1] == DIM:
        p = p.reshape(p.shape[:-1] + (DIM1, DIM1)).sum(axis=-1)
    return np.stack([p[..., G], p[..., E], p[..., I]], axis=-1)


def fidelity(states: np.ndarray) -> np.ndarray:
    return populations(states)[..., 0]


def infidelity(states: np.ndarray) -> np.ndarray:
    p = populations(states)
    return p[..., 1] + p[..., 2]


@dataclass(frozen=True)
class StirapRun:
    """Stroboscopic fidelities plus first-system population traces."""

    series: FidelitySeries
    t: np.ndarray
    P_g: np.ndarray
    P_e: np.ndarray
    P_i: np.ndarray


def sample_run(cfg: StirapConfig, samples_per_period: int | None = None) -> StirapRun:
    """Propagate ``cfg.n_periods`` periods from the ground state.

    Traces are sampled ``samples_per_period`` times per period (default: every
    integrator step). Time is measured from the start of the first period.
    """
    sched = build_schedule(cfg)
    T = cfg.period
    if samples_per_period is None:
        samples_per_period = int(round(T / cfg.dt_step))
    offsets = T * np.arange(1, samples_per_period + 1) / samples_per_period
    Us = sched.propagators(offsets)
    U_T = Us[-1]
    starts = stroboscopic_states(U_T, initial_state(cfg), cfg.n_periods - 1)
    states = np.einsum("kij,mj->mki", Us, starts).reshape(-1, sched.dim)
    states = np.vstack([initial_state(cfg)[None, :], states])
    t = np.concatenate([[0.0], (np.arange(cfg.n_periods)[:, None] * T + offsets).ravel()])
    pops = populations(states)
    strobe = states[samples_per_period::samples_per_period]
    series = FidelitySeries(np.arange(1, cfg.n_periods + 1), fidelity(strobe), infidelity(strobe))
    return StirapRun(series, t, pops[:, 0], pops[:, 1], pops[:, 2])


def double_stirap_single(cfg: StirapConfig, samples_per_period: int | None = None):
    """One period of a lone system: ``(F, StirapRun)`` with ``F = P_g(T)``."""
    run = sample_run(replace(cfg, systems=1, n_periods=1), samples_per_period)
    return run.series.at(1), run


def double_stirap_two_system(cfg: StirapConfig, samples_per_period: int | None = None) -> StirapRun:
    return sample_run(replace(cfg, systems=2), samples_per_period)


def fidelity_series(cfg: StirapConfig) -> FidelitySeries:
    U = build_schedule(cfg).period_propagator()
    states = stroboscopic_states(U, initial_state(cfg), cfg.n_periods)[1:]
    return FidelitySeries(np.arange(1, cfg.n_periods + 1), fidelity(states), infidelity(states))
