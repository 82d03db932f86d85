import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from compensim.core import stroboscopic_states
from compensim.dicke import (
    DickeConfig,
    SINGLET,
    build_schedule,
    closed_form_occupations,
    dicke_hamiltonians,
    fidelity2,
    fidelity_series_dicke,
    full_two_qubit_oracle,
    initial_state,
    populations,
    to_dicke,
)

configs = st.builds(
    DickeConfig,
    eps=st.floats(-0.015, 0.015),
    phi=st.floats(-5, 5),
    delta_t1=st.floats(-0.1, 0.1),
    gating=st.sampled_from(["gated", "always"]),
    n_periods=st.just(50),
)


@settings(max_examples=25, deadline=None)
@given(cfg=configs)
def test_three_state_reduction_matches_four_state(cfg):
    F3 = fidelity_series_dicke(cfg).fidelity
    F4, states = full_two_qubit_oracle(cfg, return_states=True)
    assert np.max(np.abs(F3 - F4.fidelity)) <= 1e-10
    assert np.max(np.abs(states @ SINGLET.conj())) <= 1e-12


@settings(max_examples=15, deadline=None)
@given(cfg=configs)
def test_matches_pade_oracle(cfg):
    ref, singlet = oracles.two_qubit_fidelities(
        cfg.eps, cfg.phi, 50, delta_t1=cfg.delta_t1, always=cfg.gating.value == "always"
    )
    assert np.max(np.abs(fidelity_series_dicke(cfg).fidelity - ref)) <= 1e-10
    assert np.max(singlet) <= 1e-12


def test_to_dicke_roundtrip():
    rng = np.random.default_rng(1)
    c = rng.normal(size=3) + 1j * rng.normal(size=3)
    psi4 = np.array([c[0], c[1] / math.sqrt(2), c[1] / math.sqrt(2), c[2]])
    assert np.allclose(to_dicke(psi4), c)


@pytest.mark.parametrize("eps", [1e-2, 1e-3, 1e-4])
def test_small_eps_residual_bounded(eps):
    for phi in (0.0, math.pi / 2, math.pi, 3 * math.pi / 2):
        F = fidelity_series_dicke(DickeConfig(eps=eps, phi=phi, n_periods=1)).at(1)
        law = 1 - 0.5 * (math.pi * eps) ** 2 * (1 + math.cos(phi))
        assert abs(F - law) / eps**4 < 100


@pytest.mark.parametrize("gating", ["gated", "always"])
def test_sign_conformity(gating):
    a = fidelity_series_dicke(DickeConfig(eps=0.01, delta_t1=0.1, phi=2.0, gating=gating)).fidelity
    b = fidelity_series_dicke(DickeConfig(eps=0.01, delta_t1=-0.1, phi=-2.0, gating=gating)).fidelity
    assert np.max(np.abs(a - b)) <= 1e-12


@pytest.mark.parametrize("eps", [-0.015, -0.005, 0.005, 0.015])
def test_symmetric_state_empty_after_compensation(eps):
    cfg = DickeConfig(eps=eps, phi=math.pi, n_periods=50)
    U = build_schedule(cfg).period_propagator()
    states = stroboscopic_states(U, initial_state(), 50)
    assert np.max(np.abs(states[2:, 1]) ** 2) < 1e-5


def test_hamiltonian_layout():
    cfg = DickeConfig(eps=0.0, delta_t1=0.2, phi=3.0, t2=10.0)
    H0, HV = dicke_hamiltonians(cfg)
    c = math.pi / math.sqrt(2)
    assert np.allclose(H0, [[0, c, 0], [c, -0.2, c], [0, c, -0.4]])
    assert np.allclose(HV, np.diag([0, 0, 0.3]))


def test_fidelity_and_populations():
    state = np.array([0.6, 0.8j, 0.0])
    assert fidelity2(state) == pytest.approx(0.36 + 0.32)
    assert np.allclose(populations(state), [0.68, 0.32])


def test_closed_forms_verbatim():
    gg, s = closed_form_occupations(math.pi, math.pi)
    assert gg == pytest.approx(4.0)
    assert s == pytest.approx(0.0, abs=1e-30)
    gg0, s0 = closed_form_occupations(0.0, 1.3)
    assert gg0 == 0.0 and s0 == 0.0
