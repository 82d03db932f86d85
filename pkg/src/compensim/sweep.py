"""Parameter-plane sweeps, fidelity traces and magic-phase search."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from functools import partial
from typing import Callable, Sequence

import numpy as np

from .core import FidelitySeries, IntegrationError
from .models import fidelity_series, infidelity_at

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class MagicSearchError(RuntimeError):
    def __init__(self, message: str, lower: float, upper: float, f_lower: float, f_upper: float):
        super().__init__(f"{message} [{lower}, {upper}] -> ({f_lower:.6g}, {f_upper:.6g})")
        self.lower, self.upper = lower, upper
        self.f_lower, self.f_upper = f_lower, f_upper


@dataclass(frozen=True)
class SweepGrid:
    axis1_name: str
    axis1_values: np.ndarray
    axis2_name: str
    axis2_values: np.ndarray
    cells: np.ndarray
    metric_name: str

    def __post_init__(self):
        shape = (len(self.axis1_values), len(self.axis2_values))
        if np.shape(self.cells) != shape:
            raise ValueError(f"cells have shape {np.shape(self.cells)}, axes imply {shape}")

    def argmin(self) -> tuple[float, float, float]:
        """``(axis1, axis2, metric)`` at the smallest finite cell."""
        c = np.where(np.isfinite(self.cells), self.cells, np.inf)
        i, j = np.unravel_index(np.argmin(c), c.shape)
        return float(self.axis1_values[i]), float(self.axis2_values[j]), float(self.cells[i, j])


def _check_axis(cfg, name: str, grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float).ravel()
    if name not in {f.name for f in fields(cfg)}:
        raise ValueError(f"unknown sweep axis {name!r} for {type(cfg).__name__}")
    if len(grid) == 0:
        raise ValueError(f"axis {name!r} is empty")
    d = np.diff(grid)
    if len(grid) > 1 and not (np.all(d > 0) or np.all(d < 0)):
        raise ValueError(f"axis {name!r} must be strictly monotone")
    return grid


def evaluate_grid(
    base_cfg,
    axis1: tuple[str, Sequence[float]],
    axis2: tuple[str, Sequence[float]],
    cell: Callable[..., float],
    args: tuple,
    metric_name: str,
    jobs: int = 1,
) -> SweepGrid:
    """Apply ``cell(cfg, *args)`` over the plane in row-major order.

    Cells are independent, so results do not depend on ``jobs``.
    """
    (n1, g1), (n2, g2) = axis1, axis2
    g1, g2 = _check_axis(base_cfg, n1, g1), _check_axis(base_cfg, n2, g2)
    cfgs = [replace(base_cfg, **{n1: float(a), n2: float(b)}) for a in g1 for b in g2]
    fn = partial(_star, cell, args)
    if jobs > 1 and len(cfgs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(fn, cfgs, chunksize=max(1, len(cfgs) // (4 * jobs))))
    else:
        values = [fn(c) for c in cfgs]
    return SweepGrid(n1, g1, n2, g2, np.array(values, dtype=float).reshape(len(g1), len(g2)), metric_name)


def _star(cell, args, cfg):
    return cell(cfg, *args)


def _infidelity_cell(cfg, n: int) -> float:
    try:
        return infidelity_at(cfg, n)
    except (IntegrationError, np.linalg.LinAlgError):
        return float("nan")


def infidelity_grid(base_cfg, axis1, axis2, n_checkpoint: int = 50, jobs: int = 1) -> SweepGrid:
    """``1 - F(n T)`` over a plane of two config fields."""
    if not 1 <= n_checkpoint <= 10_000:
        raise ValueError("n_checkpoint must be in 1..10000")
    return evaluate_grid(base_cfg, axis1, axis2, _infidelity_cell, (n_checkpoint,), "infidelity_at_nT", jobs)


def fidelity_vs_n(cfg, n_max: int) -> FidelitySeries:
    if not 1 <= n_max <= 10_000:
        raise ValueError("n_max must be in 1..10000")
    return fidelity_series(cfg, n_max)


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-4):
    """Minimise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def locate_magic(cfg, interval: tuple[float, float], n_checkpoint: int | None = None, tol: float = 1e-4):
    """Interaction phase ``V T2`` minimising the infidelity at ``n T``.

    The caller brackets a single minimum; a minimum pinned to an endpoint
    raises :class:`MagicSearchError`.
    """
    lower, upper = map(float, interval)
    n = cfg.n_periods if n_checkpoint is None else n_checkpoint

    def f(phi: float) -> float:
        return infidelity_at(replace(cfg, phi=phi), n)

    if not upper > lower:
        raise MagicSearchError("empty search interval", lower, upper, math.nan, math.nan)
    x, fx = golden_section(f, lower, upper, tol)
    if min(x - lower, upper - x) < 2 * tol:
        raise MagicSearchError("minimum not bracketed", lower, upper, f(lower), f(upper))
    return x, fx
