"""Independent reference implementations used by the tests.

Nothing here imports the package. Two-level propagators use the SU(2) closed
form, larger constant propagators use ``scipy.linalg.expm`` (Pade), and the
STIRAP reference integrates with an adaptive Dormand-Prince solver.
"""
import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def su2_step(rabi, diag_e, t):
    """exp(-i t H) for H = diag(0, diag_e) + (rabi/2) sx, in closed form."""
    a, bx, bz = diag_e / 2, rabi / 2, -diag_e / 2
    b = math.hypot(bx, bz)
    phase = np.exp(-1j * a * t)
    if b == 0:
        return phase * I2
    return phase * (math.cos(b * t) * I2 - 1j * math.sin(b * t) * (bx * SX + bz * SZ) / b)


def twolevel_segments(eps, phi, t1=1.0, t2=10.0, delta_t1=0.0, always=False):
    """(duration, rabi, diag_e) for the four segments of one period."""
    rabi = math.pi * (1 + eps) / t1
    V = phi / t2
    d_pulse = -delta_t1 / t1 + (V if always else 0.0)
    return [(t1, rabi, d_pulse), (t2, 0.0, V), (t1, rabi, d_pulse), (t2, 0.0, V)]


def twolevel_period(eps, phi, **kw):
    U = I2
    for dur, rabi, d in twolevel_segments(eps, phi, **kw):
        U = su2_step(rabi, d, dur) @ U
    return U


def twolevel_fidelities(eps, phi, n, **kw):
    """F1(kT), k = 1..n, by repeated 2x2 matrix products."""
    U = twolevel_period(eps, phi, **kw)
    psi = np.array([1, 0], dtype=complex)
    out = []
    for _ in range(n):
        psi = U @ psi
        out.append(abs(psi[0]) ** 2)
    return np.array(out)


def twolevel_trace(eps, phi, n_periods, spp, **kw):
    """P_g - P_e sampled at t = k T / spp, k = 0..n spp - 1."""
    segs = twolevel_segments(eps, phi, **kw)
    edges = np.cumsum([0.0] + [s[0] for s in segs])
    T = edges[-1]
    U_T = twolevel_period(eps, phi, **kw)
    one = []
    for k in range(spp):
        t = k * T / spp
        U = I2
        for (dur, rabi, d), a in zip(segs, edges[:-1]):
            span = min(max(t - a, 0.0), dur)
            if span > 0:
                U = su2_step(rabi, d, span) @ U
        one.append(U)
    psi = np.array([1, 0], dtype=complex)
    out = []
    for _ in range(n_periods):
        for U in one:
            s = U @ psi
            out.append(abs(s[0]) ** 2 - abs(s[1]) ** 2)
        psi = U_T @ psi
    return np.array(out)


def dft_bin(x, k):
    """One-sided amplitude of bin k by direct summation."""
    N = len(x)
    return 2.0 * abs(np.sum(x * np.exp(-2j * np.pi * k * np.arange(N) / N))) / N


def two_qubit_period(eps, phi, t1=1.0, t2=10.0, delta_t1=0.0, always=False):
    """4x4 period propagator in the product basis, index 2*q1 + q2."""
    rabi = math.pi * (1 + eps) / t1
    V = phi / t2
    h = -delta_t1 / t1 * np.diag([0, 1]) + rabi / 2 * SX
    H0 = np.kron(h, I2) + np.kron(I2, h)
    HV = V * np.diag([0, 0, 0, 1]).astype(complex)
    pulse = H0 + HV if always else H0
    U = np.eye(4, dtype=complex)
    for H, dur in ((pulse, t1), (HV, t2), (pulse, t1), (HV, t2)):
        U = expm(-1j * H * dur) @ U
    return U


def two_qubit_fidelities(eps, phi, n, **kw):
    """F2(kT) = <g1| Tr_2 rho |g1>, k = 1..n, and the singlet amplitudes."""
    U = two_qubit_period(eps, phi, **kw)
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1
    F, singlet = [], []
    for _ in range(n):
        psi = U @ psi
        F.append(abs(psi[0]) ** 2 + abs(psi[1]) ** 2)
        singlet.append(abs(psi[1] - psi[2]) / math.sqrt(2))
    return np.array(F), np.array(singlet)


def stirap_drive(t, omega0, delta, delta2, t1, t2, tg):
    """3x3 ladder Hamiltonian with both pulse pairs of a period."""
    g = lambda c: omega0 * math.exp(-(((t - c) / tg) ** 2))
    wp = g(t1 / 2) + g(t2 - t1 / 2)
    ws = g(-t1 / 2) + g(t2 + t1 / 2)
    return np.array(
        [[0, wp / 2, 0], [wp / 2, -delta, ws / 2], [0, ws / 2, -delta2]], dtype=complex
    )


def stirap_run(omega_tg=12.0, delta_tg=1.4, t1=1.2, t2=10.0, tg=1.0, phi=0.0,
               systems=1, n_periods=1, window_tg=4.0, gated=False):
    """Ground population of system 1 at t = kT with an adaptive integrator."""
    omega0, delta = omega_tg / tg, delta_tg / tg
    w = window_tg * tg
    V = phi / t2
    T = 2 * t2

    def H(t):
        h = stirap_drive(t, omega0, delta, 0.0, t1, t2, tg)
        if systems == 1:
            return h
        full = np.kron(h, np.eye(3)) + np.kron(np.eye(3), h)
        in_pulse = (t < -w + 2 * w) or (t2 - w <= t < t2 + w)
        if not (gated and in_pulse):
            full[8, 8] += V
        return full

    dim = 3 if systems == 1 else 9
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1
    out = []
    edges = [-w, w, t2 - w, t2 + w, T - w]
    for _ in range(n_periods):
        for a, b in zip(edges[:-1], edges[1:]):
            sol = solve_ivp(lambda t, y: -1j * (H(t) @ y), (a, b), psi,
                            method="DOP853", rtol=1e-11, atol=1e-12)
            psi = sol.y[:, -1]
        p = np.abs(psi) ** 2
        out.append(p[0] if systems == 1 else p.reshape(3, 3).sum(axis=1)[0])
    return np.array(out)
