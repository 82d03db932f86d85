"""Uniform access to the three models for sweeps and spectral analysis."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import dicke, stirap, twolevel
from .core import FidelitySeries, PiecewiseSchedule, stroboscopic_states


@dataclass(frozen=True)
class Model:
    name: str
    config_type: type
    schedule: Callable[..., PiecewiseSchedule]
    initial_state: Callable[..., np.ndarray]
    populations: Callable[[np.ndarray], np.ndarray]
    labels: tuple[str, ...]
    fidelity: Callable[[np.ndarray], np.ndarray]
    infidelity: Callable[[np.ndarray], np.ndarray]


MODELS = {
    "twolevel": Model(
        "twolevel",
        twolevel.TwoLevelConfig,
        twolevel.build_schedule,
        twolevel.initial_state,
        twolevel.populations,
        twolevel.LABELS,
        twolevel.fidelity,
        twolevel.infidelity,
    ),
    "dicke": Model(
        "dicke",
        dicke.DickeConfig,
        dicke.build_schedule,
        dicke.initial_state,
        dicke.populations,
        dicke.LABELS,
        dicke.fidelity,
        dicke.infidelity,
    ),
    "stirap": Model(
        "stirap",
        stirap.StirapConfig,
        stirap.build_schedule,
        stirap.initial_state,
        stirap.populations,
        stirap.LABELS,
        stirap.fidelity,
        stirap.infidelity,
    ),
}


def model_for(cfg) -> Model:
    for m in MODELS.values():
        if type(cfg) is m.config_type:
            return m
    raise TypeError(f"no model for config type {type(cfg).__name__}")


def period_propagator(cfg) -> np.ndarray:
    return model_for(cfg).schedule(cfg).period_propagator()


def state_after(cfg, n: int) -> np.ndarray:
    m = model_for(cfg)
    U = np.linalg.matrix_power(period_propagator(cfg), n)
    return U @ m.initial_state(cfg)


def infidelity_at(cfg, n: int) -> float:
    return float(model_for(cfg).infidelity(state_after(cfg, n)))


def fidelity_series(cfg, n: int | None = None) -> FidelitySeries:
    m = model_for(cfg)
    n = cfg.n_periods if n is None else n
    states = stroboscopic_states(period_propagator(cfg), m.initial_state(cfg), n)[1:]
    return FidelitySeries(np.arange(1, n + 1), m.fidelity(states), m.infidelity(states))


def sampled_states(cfg, n_periods: int, samples_per_period: int):
    """States on the uniform grid ``t_k = k T / spp``, ``k = 0..n spp - 1``.

    Returns ``(t, states)``; one period of propagators is computed and reused.
    """
    m = model_for(cfg)
    sched = m.schedule(cfg)
    T = sched.period
    offsets = T * np.arange(samples_per_period + 1) / samples_per_period
    Us = sched.propagators(offsets)
    starts = stroboscopic_states(Us[-1], m.initial_state(cfg), n_periods - 1)
    states = np.einsum("kij,mj->mki", Us[:-1], starts).reshape(-1, sched.dim)
    t = T * np.arange(n_periods * samples_per_period) / samples_per_period
    return t, states


def trajectory(cfg, samples_per_period: int):
    """Population traces over ``cfg.n_periods`` periods, end point included.

    Returns ``(t, pops)`` with one column per entry of the model's labels.
    """
    t, states = sampled_states(cfg, cfg.n_periods, samples_per_period)
    final = state_after(cfg, cfg.n_periods)
    t = np.append(t, cfg.n_periods * cfg.period)
    return t, model_for(cfg).populations(np.vstack([states, final[None, :]]))
