"""Two identically driven qubits in the symmetric Dicke basis.

Basis order is ``|gg>, |s>, |ee>`` with ``|s> = (|ge> + |eg>)/sqrt(2)``. The
singlet never couples to the drive, so three states suffice; the full
four-state propagation is kept as an independent check.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .core import (
    SIGMA_X,
    FidelitySeries,
    PiecewiseSchedule,
    Segment,
    basis,
    partial_trace_second,
    projector,
    stroboscopic_states,
    tensor_product,
)
from .twolevel import Gating, TwoLevelConfig

DIM = 3
GG, S, EE = 0, 1, 2
LABELS = ("P_g", "P_e")
SQRT2 = math.sqrt(2.0)


class DickeConfig(TwoLevelConfig):
    """Same knobs as the two-level model, applied to both qubits."""


class DickeState(NamedTuple):
    c_gg: complex
    c_s: complex
    c_ee: complex


def dicke_hamiltonians(cfg: TwoLevelConfig) -> tuple[np.ndarray, np.ndarray]:
    """Drive Hamiltonian and interaction Hamiltonian in the Dicke basis.

    The detuning enters as ``(0, -delta, -2 delta)``, the exact reduction of
    ``-delta |e><e|`` on each qubit.
    """
    c = cfg.rabi / SQRT2
    d = cfg.delta
    H0 = np.array([[0, c, 0], [c, -d, c], [0, c, -2 * d]], dtype=complex)
    HV = cfg.V * projector(DIM, EE)
    return H0, HV


def build_schedule(cfg: TwoLevelConfig) -> PiecewiseSchedule:
    H0, HV = dicke_hamiltonians(cfg)
    pulse = H0 + HV if cfg.gating is Gating.ALWAYS else H0
    return PiecewiseSchedule(
        (
            Segment(cfg.t1, pulse, "pulse"),
            Segment(cfg.t2, HV, "wait"),
            Segment(cfg.t1, pulse, "pulse"),
            Segment(cfg.t2, HV, "wait"),
        ),
        dim=DIM,
    )


def initial_state(cfg: TwoLevelConfig | None = None) -> np.ndarray:
    return basis(DIM, GG)


def fidelity2(state) -> float:
    """``|c_gg|^2 + |c_s|^2 / 2``: ground population of the first qubit."""
    c = np.asarray(state)
    return float(abs(c[GG]) ** 2 + 0.5 * abs(c[S]) ** 2)


def fidelity(states: np.ndarray) -> np.ndarray:
    p = np.abs(np.asarray(states)) ** 2
    return p[..., GG] + 0.5 * p[..., S]


def infidelity(states: np.ndarray) -> np.ndarray:
    p = np.abs(np.asarray(states)) ** 2
    return p[..., EE] + 0.5 * p[..., S]


def populations(states: np.ndarray) -> np.ndarray:
    """First-qubit ``(P_g, P_e)`` after tracing out the second qubit."""
    return np.stack([fidelity(states), infidelity(states)], axis=-1)


def fidelity_series_dicke(cfg: TwoLevelConfig) -> FidelitySeries:
    U = build_schedule(cfg).period_propagator()
    states = stroboscopic_states(U, initial_state(), cfg.n_periods)[1:]
    return FidelitySeries(np.arange(1, cfg.n_periods + 1), fidelity(states), infidelity(states))


def closed_form_occupations(omega_t1: float, phi: float) -> tuple[float, float]:
    """Published closed forms for ``|c_gg(T)|^2`` and ``|c_s(T)|^2``, verbatim.

    Reference only. As printed the first expression is not bounded by one
    (it gives 4 at ``omega_t1 = phi = pi``), so use the propagation for numbers.
    """
    c1, c2 = math.cos(omega_t1), math.cos(2 * omega_t1)
    cv, sv = math.cos(phi), math.sin(phi)
    gg = 0.25 * ((1 - c2) - 0.5 * (1 - c1) ** 2 * (1 - cv)) ** 2 + (1 - c1) ** 4 * sv**2 / 16
    s = 0.25 * math.sin(omega_t1) ** 2 * (c1**2 * (5 + 3 * cv) + (2 * c1 + 1) * (1 - cv))
    return gg, s


# Full two-qubit space, index = 2 * q1 + q2 with g = 0, e = 1.
DIM_FULL = 4
SINGLET = np.array([0, 1, -1, 0], dtype=complex) / SQRT2
TRIPLET_S = np.array([0, 1, 1, 0], dtype=complex) / SQRT2


def two_qubit_schedule(cfg: TwoLevelConfig) -> PiecewiseSchedule:
    h = -cfg.delta * projector(2, 1) + 0.5 * cfg.rabi * SIGMA_X
    eye = np.eye(2)
    H0 = tensor_product(h, eye) + tensor_product(eye, h)
    HV = cfg.V * projector(DIM_FULL, 3)
    pulse = H0 + HV if cfg.gating is Gating.ALWAYS else H0
    return PiecewiseSchedule(
        (
            Segment(cfg.t1, pulse, "pulse"),
            Segment(cfg.t2, HV, "wait"),
            Segment(cfg.t1, pulse, "pulse"),
            Segment(cfg.t2, HV, "wait"),
        ),
        dim=DIM_FULL,
    )


def full_two_qubit_oracle(cfg: TwoLevelConfig, return_states: bool = False):
    """Brute-force ``F2(kT)`` in the product basis via the partial trace.

    With ``return_states`` the stroboscopic four-component states (rows
    ``k = 0..n``) are returned as well.
    """
    U = two_qubit_schedule(cfg).period_propagator()
    states = stroboscopic_states(U, basis(DIM_FULL, 0), cfg.n_periods)
    F = np.array([partial_trace_second(psi, 2, 2)[0, 0].real for psi in states[1:]])
    series = FidelitySeries(np.arange(1, cfg.n_periods + 1), F)
    return (series, states) if return_states else series


def to_dicke(psi4: np.ndarray) -> np.ndarray:
    """Project a symmetric two-qubit state onto ``(|gg>, |s>, |ee>)``."""
    psi4 = np.asarray(psi4)
    return np.stack([psi4[..., 0], psi4 @ TRIPLET_S.conj(), psi4[..., 3]], axis=-1)

