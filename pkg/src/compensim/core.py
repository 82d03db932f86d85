"""Small dense linear algebra and time propagation for few-level systems.

All operators are plain ``numpy`` complex arrays. Time is in arbitrary units
with hbar = 1, so a Hamiltonian ``H`` generates ``exp(-1j * H * t)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
NORM_DRIFT_LIMIT = 1e-6

HamiltonianFn = Callable[[np.ndarray], np.ndarray]
Generator = Union[np.ndarray, HamiltonianFn]


class IntegrationError(RuntimeError):
    """Raised when the fixed-step integrator loses too much norm."""

    def __init__(self, drift: float):
        super().__init__(f"norm drift {drift:.3e} exceeds {NORM_DRIFT_LIMIT:.0e}")
        self.drift = drift


def basis(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(dim: int, index: int) -> np.ndarray:
    p = np.zeros((dim, dim), dtype=complex)
    p[index, index] = 1.0
    return p


SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def check_hermitian(H: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    H = np.asarray(H)
    if H.ndim < 2 or H.shape[-1] != H.shape[-2]:
        raise ValueError(f"Hamiltonian must be square, got shape {H.shape}")
    err = np.max(np.abs(H - np.conj(np.swapaxes(H, -1, -2)))) if H.size else 0.0
    if err > tol:
        raise ValueError(f"Hamiltonian is not Hermitian (max |H - H^dag| = {err:.3e})")


def unitarity_error(U: np.ndarray) -> float:
    U = np.asarray(U)
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


def expm_hermitian(H: np.ndarray, dt: float) -> np.ndarray:
    """``exp(-i H dt)`` through the Hermitian eigendecomposition."""
    w, v = np.linalg.eigh(H)
    return (v * np.exp(-1j * w * dt)) @ v.conj().T


def propagate_constant(H: np.ndarray, dt: float, psi: np.ndarray) -> np.ndarray:
    """Return ``exp(-i H dt) psi`` for a time-independent Hermitian ``H``.

    ``psi`` may be a state vector or a matrix whose columns are states.
    """
    H = np.asarray(H, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    check_hermitian(H)
    if dt < 0:
        raise ValueError("dt must be non-negative")
    if psi.shape[0] != H.shape[0]:
        raise ValueError(f"dimension mismatch: H is {H.shape}, state has {psi.shape[0]} rows")
    return expm_hermitian(H, dt) @ psi


def _sample_hamiltonian(Hfun: HamiltonianFn, ts: np.ndarray, dim: int) -> np.ndarray:
    # Hamiltonian callables may be vectorised over time; fall back to a loop.
    out = np.asarray(Hfun(ts), dtype=complex)
    if out.shape == (len(ts), dim, dim):
        return out
    if out.shape == (dim, dim):
        return np.broadcast_to(out, (len(ts), dim, dim))
    return np.stack([np.asarray(Hfun(t), dtype=complex) for t in ts])


def _norms(psi: np.ndarray) -> np.ndarray:
    return np.linalg.norm(psi, axis=0)


def propagate_timedep(
    Hfun: HamiltonianFn,
    t0: float,
    t1: float,
    dt_step: float,
    psi: np.ndarray,
    check: bool = True,
) -> np.ndarray:
    """Classical fourth-order Runge-Kutta for ``i d psi/dt = H(t) psi``.

    The interval is split into ``ceil((t1 - t0) / dt_step)`` equal steps, so the
    actual step never exceeds ``dt_step``. No renormalisation is applied; the
    norm drift is the accuracy diagnostic and raises :class:`IntegrationError`
    beyond 1e-6.
    """
    psi = np.array(psi, dtype=complex)
    if dt_step <= 0:
        raise ValueError("dt_step must be positive")
    if t1 < t0:
        raise ValueError("t1 must not precede t0")
    span = t1 - t0
    if span == 0:
        return psi
    n = max(1, int(np.ceil(span / dt_step - 1e-9)))
    h = span / n
    dim = psi.shape[0]
    grid = t0 + h * np.arange(n + 1)
    mids = t0 + h * (np.arange(n) + 0.5)
    A = -1j * _sample_hamiltonian(Hfun, grid, dim)
    Am = -1j * _sample_hamiltonian(Hfun, mids, dim)
    if check:
        check_hermitian(1j * A[:: max(1, n // 16)])
    norm0 = _norms(psi)
    y = psi
    for j in range(n):
        k1 = A[j] @ y
        k2 = Am[j] @ (y + 0.5 * h * k1)
        k3 = Am[j] @ (y + 0.5 * h * k2)
        k4 = A[j + 1] @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if check:
        drift = float(np.max(np.abs(_norms(y) - norm0)))
        if drift > NORM_DRIFT_LIMIT:
            raise IntegrationError(drift)
    return y


def tensor_product(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product; the first factor is the slow (first-qubit) index."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def partial_trace_second(psi: np.ndarray, d1: int, d2: int) -> np.ndarray:
    """Reduced density matrix of the first subsystem of a pure state."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (d1 * d2,):
        raise ValueError(f"state of shape {psi.shape} does not factor as {d1}x{d2}")
    m = psi.reshape(d1, d2)
    return m @ m.conj().T


def ground_fidelity(state: np.ndarray, ground_index: int = 0) -> float:
    """Ground-state population of a pure state (1-D) or density matrix (2-D)."""
    state = np.asarray(state)
    if state.ndim == 1:
        return float(abs(state[ground_index]) ** 2)
    return float(np.real(state[ground_index, ground_index]))


@dataclass(frozen=True)
class Segment:
    duration: float
    generator: Generator
    label: str = ""

    @property
    def constant(self) -> bool:
        return not callable(self.generator)


@dataclass(frozen=True)
class PiecewiseSchedule:
    """Ordered segments covering one period that starts at local time ``t0``.

    Time-dependent generators receive the period-local time.
    """

    segments: tuple[Segment, ...]
    dim: int
    t0: float = 0.0
    dt_step: float = 1e-3

    @property
    def period(self) -> float:
        return float(sum(s.duration for s in self.segments))

    def boundaries(self) -> np.ndarray:
        return self.t0 + np.concatenate([[0.0], np.cumsum([s.duration for s in self.segments])])

    def hamiltonian(self, t: float) -> np.ndarray:
        """Generator active at period-local time ``t`` (left-continuous)."""
        edges = self.boundaries()
        k = int(np.clip(np.searchsorted(edges, t, side="right") - 1, 0, len(self.segments) - 1))
        g = self.segments[k].generator
        return np.asarray(g(np.asarray([t]))[0] if callable(g) else g)

    def _advance(self, seg: Segment, a: float, b: float, U: np.ndarray) -> np.ndarray:
        if seg.constant:
            return expm_hermitian(np.asarray(seg.generator), b - a) @ U
        return propagate_timedep(seg.generator, a, b, self.dt_step, U)

    def propagators(self, offsets: Sequence[float]) -> np.ndarray:
        """Evolution operators ``U(t0 + s)`` for sorted offsets ``s`` in ``[0, T]``."""
        offsets = np.asarray(offsets, dtype=float)
        if np.any(np.diff(offsets) < 0):
            raise ValueError("offsets must be sorted")
        edges = self.boundaries() - self.t0
        out = np.empty((len(offsets), self.dim, self.dim), dtype=complex)
        U = np.eye(self.dim, dtype=complex)
        here = 0.0
        k = 0
        for i, s in enumerate(offsets):
            while k < len(self.segments) and s > edges[k + 1]:
                U = self._advance(self.segments[k], self.t0 + here, self.t0 + edges[k + 1], U)
                here = edges[k + 1]
                k += 1
            if s > here:
                seg = self.segments[min(k, len(self.segments) - 1)]
                U = self._advance(seg, self.t0 + here, self.t0 + s, U)
                here = s
            out[i] = U
        return out

    def period_propagator(self) -> np.ndarray:
        U = np.eye(self.dim, dtype=complex)
        edges = self.boundaries()
        for seg, a, b in zip(self.segments, edges[:-1], edges[1:]):
            U = self._advance(seg, a, b, U)
        return U


def stroboscopic_states(U_period: np.ndarray, psi0: np.ndarray, n: int) -> np.ndarray:
    """States at ``t = kT`` for ``k = 0..n`` (row ``k``)."""
    out = np.empty((n + 1, len(psi0)), dtype=complex)
    out[0] = psi0
    for k in range(n):
        out[k + 1] = U_period @ out[k]
    return out


@dataclass(frozen=True)
class FidelitySeries:
    """Stroboscopic fidelities ``F(kT)``, ``k = 1..n``."""

    n: np.ndarray
    fidelity: np.ndarray
    infidelity: np.ndarray | None = None

    def __post_init__(self):
        if self.infidelity is None:
            object.__setattr__(self, "infidelity", 1.0 - np.asarray(self.fidelity))

    def __len__(self) -> int:
        return len(self.n)

    def at(self, k: int) -> float:
        return float(self.fidelity[k - 1])
