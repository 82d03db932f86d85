"""Spectral compensation search.

At zero error or perfect compensation the population difference
``P(t) = P_g(t) - P_e(t)`` repeats every period, so its spectrum sits on the
harmonics of ``nu0 = 1/T``. Errors split the ``nu0`` line into sidebands and
drain its weight. The metric ``|1 - |P(nu0)| / |P_ref(nu0)||`` compares the
line with that of the first period repeated forever, which is what an exactly
periodic (compensated) run would show with the same sampling.
"""
from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .core import IntegrationError
from .models import model_for, sampled_states
from .sweep import SweepGrid, evaluate_grid

DEFAULT_PERIODS = 64
DEFAULT_SAMPLES = 64
REFERENCE_FLOOR = 1e-9


class DegenerateReference(ArithmeticError):
    """The error-free run has no weight at ``nu0``."""


@dataclass(frozen=True)
class TimeSeries:
    dt: float
    values: np.ndarray
    t0: float = 0.0
    period: float | None = None

    def __post_init__(self):
        if len(self.values) < 2:
            raise ValueError("need at least two samples")
        if not self.dt > 0:
            raise ValueError("dt must be positive")

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self.values))


@dataclass(frozen=True)
class Spectrum:
    """One-sided amplitude spectrum: a unit cosine on a bin reads 1 there."""

    dnu: float
    magnitudes: np.ndarray
    n_samples: int
    period: float | None = None

    @property
    def nu(self) -> np.ndarray:
        return self.dnu * np.arange(len(self.magnitudes))

    def bin_of(self, nu: float) -> int:
        return int(round(nu / self.dnu))


def population_difference_series(
    cfg, n_periods: int = DEFAULT_PERIODS, samples_per_period: int = DEFAULT_SAMPLES
) -> TimeSeries:
    """Uniform samples of ``P_g - P_e`` of the computational qubit over ``n T``."""
    if samples_per_period < 16:
        raise ValueError("samples_per_period must be at least 16")
    if n_periods < 8:
        raise ValueError("n_periods must be at least 8")
    m = model_for(cfg)
    t, states = sampled_states(cfg, n_periods, samples_per_period)
    pops = m.populations(states)
    period = t[samples_per_period]
    return TimeSeries(t[1] - t[0], pops[:, 0] - pops[:, 1], period=period)


def spectrum(series: TimeSeries) -> Spectrum:
    N = len(series.values)
    X = np.abs(np.fft.rfft(series.values)) / N
    interior = slice(1, None) if N % 2 else slice(1, -1)
    X[interior] *= 2.0
    return Spectrum(1.0 / (N * series.dt), X, N, series.period)


def parseval_residual(series: TimeSeries, sp: Spectrum) -> float:
    """``|mean(x^2) - sum of bin powers|`` for the one-sided amplitudes."""
    mag = sp.magnitudes
    power = mag[0] ** 2 + 0.5 * np.sum(mag[1:] ** 2)
    if sp.n_samples % 2 == 0:
        power += 0.5 * mag[-1] ** 2  # Nyquist bin was not doubled
    return float(abs(np.mean(np.asarray(series.values) ** 2) - power))


def _layout(sp: Spectrum) -> tuple[int, int]:
    if sp.period is None:
        raise ValueError("spectrum carries no period; cannot locate nu0")
    n_periods = int(round(1.0 / (sp.dnu * sp.period)))
    return n_periods, sp.n_samples // n_periods


def nu0_amplitude(values, samples_per_period: int) -> float:
    """One-sided ``|P(nu0)|`` of a single period repeated forever."""
    one = np.asarray(values, dtype=float)[:samples_per_period]
    return float(2.0 * abs(np.fft.fft(one)[1]) / samples_per_period)


def reference_peak(cfg, samples_per_period: int = DEFAULT_SAMPLES) -> float:
    """Periodic reference amplitude of ``cfg``, from its first period."""
    t, states = sampled_states(cfg, 1, samples_per_period)
    pops = model_for(cfg).populations(states)
    return nu0_amplitude(pops[:, 0] - pops[:, 1], samples_per_period)


def peak_metric(sp: Spectrum, cfg=None, reference: float | None = None) -> float:
    """``|1 - |P(nu0)| / |P_ref(nu0)||`` against the periodic reference.

    Zero (to round-off) when the sampled run repeats every period. Pass
    ``reference`` to skip propagating the first period of ``cfg`` again.
    """
    n_periods, spp = _layout(sp)
    ref = reference_peak(cfg, spp) if reference is None else reference
    if ref < REFERENCE_FLOOR:
        raise DegenerateReference(f"reference amplitude {ref:.3e} at nu0")
    return abs(1.0 - sp.magnitudes[n_periods] / ref)


def analyse(cfg, n_periods: int = DEFAULT_PERIODS, samples_per_period: int = DEFAULT_SAMPLES):
    """``(series, spectrum, metric)`` from a single propagation."""
    series = population_difference_series(cfg, n_periods, samples_per_period)
    sp = spectrum(series)
    ref = nu0_amplitude(series.values, samples_per_period)
    return series, sp, peak_metric(sp, reference=ref)


def fourier_metric(cfg, n_periods: int = DEFAULT_PERIODS, samples_per_period: int = DEFAULT_SAMPLES) -> float:
    return analyse(cfg, n_periods, samples_per_period)[2]


def sideband_frequencies(sp: Spectrum, nu0: float, rel_floor: float = 1e-9) -> list[tuple[float, float]]:
    """The two strongest local maxima in ``(nu0/2, 3 nu0/2)`` other than ``nu0``.

    Maxima weaker than ``rel_floor`` times the ``nu0`` line are round-off and
    ignored; an empty list means the line did not split.
    """
    mag = sp.magnitudes
    k0 = sp.bin_of(nu0)
    lo, hi = sp.bin_of(0.5 * nu0), sp.bin_of(1.5 * nu0)
    floor = rel_floor * max(mag[k0], np.max(mag[lo : hi + 1]))
    peaks = [
        k
        for k in range(lo + 1, hi)
        if k != k0 and mag[k] > mag[k - 1] and mag[k] > mag[k + 1] and mag[k] > floor
    ]
    peaks = sorted(sorted(peaks, key=lambda k: -mag[k])[:2])
    return [(k * sp.dnu, float(mag[k])) for k in peaks]


def _metric_cell(cfg, n_periods: int, samples_per_period: int) -> float:
    try:
        return fourier_metric(cfg, n_periods, samples_per_period)
    except (IntegrationError, DegenerateReference, np.linalg.LinAlgError):
        return float("nan")


def scan2d(
    base_cfg,
    axis1: tuple[str, np.ndarray],
    axis2: tuple[str, np.ndarray],
    n_periods: int = DEFAULT_PERIODS,
    samples_per_period: int = DEFAULT_SAMPLES,
    jobs: int = 1,
) -> SweepGrid:
    """Fourier peak metric over a parameter plane; failed cells hold NaN."""
    return evaluate_grid(
        base_cfg, axis1, axis2, _metric_cell, (n_periods, samples_per_period), "fourier_peak", jobs
    )
