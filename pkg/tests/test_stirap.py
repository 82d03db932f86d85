from dataclasses import replace

import numpy as np
import pytest

import oracles
from compensim.core import propagate_timedep, stroboscopic_states
from compensim.stirap import (
    DarkStateUndefined,
    StirapConfig,
    build_schedule,
    dark_state,
    double_stirap_single,
    drive_hamiltonian,
    fidelity_series,
    initial_state,
    populations,
    pump_stokes,
    sample_run,
    stirap_hamiltonian,
)

FIG = StirapConfig()


@pytest.fixture(scope="module")
def compensated():
    cfg = replace(FIG, phi=2.0)
    U = build_schedule(cfg).period_propagator()
    return cfg, U, stroboscopic_states(U, initial_state(cfg), cfg.n_periods)


def test_pulse_ordering():
    fp, fs = pump_stokes(np.array([-0.6, 0.6]), FIG)
    assert fs[0] == pytest.approx(12.0) and fp[1] == pytest.approx(12.0)
    rp, rs = pump_stokes(np.array([9.4, 10.6]), FIG, reversed=True)
    assert rp[0] == pytest.approx(12.0) and rs[1] == pytest.approx(12.0)


def test_dark_state_has_zero_energy():
    for t in np.linspace(-4, 14, 37):
        for rev in (False, True):
            _, D = dark_state(t, FIG, rev)
            assert abs(D.conj() @ stirap_hamiltonian(t, FIG, rev) @ D) <= 1e-12


def test_dark_state_undefined_far_from_pulses():
    with pytest.raises(DarkStateUndefined):
        dark_state(1e4, FIG)


def test_single_system_matches_adaptive_oracle():
    for d in (1.17, 1.4):
        F, run = double_stirap_single(replace(FIG, delta_tg=d), samples_per_period=200)
        ref = oracles.stirap_run(delta_tg=d)[0]
        assert F == pytest.approx(ref, abs=1e-8)
        assert run.t[-1] == pytest.approx(FIG.period)
        assert np.allclose(run.P_g + run.P_e + run.P_i, 1, atol=1e-9)


def test_norm_conserved_over_run(compensated):
    _, _, states = compensated
    assert np.max(np.abs(np.linalg.norm(states, axis=1) - 1)) <= 1e-7


def test_exchange_symmetry(compensated):
    _, _, states = compensated
    p = (np.abs(states) ** 2).reshape(-1, 3, 3)
    assert np.max(np.abs(p.sum(axis=2) - p.sum(axis=1))) <= 1e-10


def test_two_systems_match_adaptive_oracle(compensated):
    cfg, _, states = compensated
    ref = oracles.stirap_run(phi=2.0, systems=2, n_periods=5)
    assert np.max(np.abs(populations(states[1:])[:, 0] - ref)) <= 1e-7


def test_convergence_under_step_halving():
    H = lambda t: drive_hamiltonian(t, FIG)  # noqa: E731
    psi = np.eye(3, dtype=complex)
    sol = {h: propagate_timedep(H, -4, 4, h, psi, check=False) for h in (0.02, 0.01, 0.005)}
    e1 = np.max(np.abs(sol[0.02] - sol[0.01]))
    e2 = np.max(np.abs(sol[0.01] - sol[0.005]))
    assert e1 / e2 >= 8


def test_sample_run_strobe_matches_series():
    cfg = replace(FIG, n_periods=2, phi=1.0)
    run = sample_run(cfg, samples_per_period=40)
    assert np.allclose(run.series.fidelity, fidelity_series(cfg).fidelity, atol=1e-12)
    assert len(run.t) == 81


def test_config_validation():
    with pytest.raises(ValueError, match="window_tg"):
        StirapConfig(window_tg=3)
    with pytest.raises(ValueError, match="t2"):
        StirapConfig(t2=7)
    with pytest.raises(ValueError, match="systems"):
        StirapConfig(systems=3)
    assert FIG.dt_step == pytest.approx(1 / 500)
    assert FIG.period == 20.0


def test_gating_consistency():
    # Switching V off inside the pulse windows should barely matter. It does
    # matter for this Hamiltonian (0.38 against 0.96), so the test stays red
    # until the discrepancy is understood.
    always = fidelity_series(replace(FIG, phi=2.0)).at(5)
    gated = fidelity_series(replace(FIG, phi=2.0, gating="gated")).at(5)
    assert abs(always - gated) <= 0.01, (always, gated)
