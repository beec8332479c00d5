import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xxzteleport.channel import InputState, apply_channel_general, channel_coefficients, input_density
from xxzteleport.errors import InvalidDensityMatrixError
from xxzteleport.metrics import (concurrence_general, concurrence_x_state, fidelity_closed,
                                 fidelity_general, input_concurrence, output_concurrence_closed,
                                 pure_state_fidelity)
from xxzteleport.numkit import projector
from xxzteleport.spin_model import ModelParams, thermal_state_closed, thermal_state_oracle

from test_channel import SINGLET, random_density
from test_spin_model import random_params

REF = ModelParams(1, 1, 0, 0, 1.0)
QUARTER = InputState(math.pi / 4)


def test_concurrence_extremes():
    res = concurrence_general(projector(SINGLET))
    assert res.value == pytest.approx(1.0, abs=1e-12)
    assert res.gammas[0] >= res.gammas[1] >= res.gammas[2] >= res.gammas[3] >= 0
    assert concurrence_general(np.diag([0, 0, 0, 1.0])).value == 0.0


@pytest.mark.parametrize("theta", [math.pi / 12, math.pi / 8, math.pi / 6])
def test_input_family_concurrence(theta):
    s = InputState(theta, 0.9)
    assert concurrence_general(input_density(s)).value == pytest.approx(math.sin(2 * theta), abs=1e-12)
    assert input_concurrence(s) == pytest.approx(math.sin(2 * theta))


def test_input_concurrence_values():
    assert input_concurrence(InputState(0)) == 0
    assert input_concurrence(QUARTER) == pytest.approx(1.0)
    assert input_concurrence(InputState(math.pi / 6)) == pytest.approx(math.sqrt(3) / 2)


def test_concurrence_rejects_non_density():
    with pytest.raises(InvalidDensityMatrixError):
        concurrence_general(np.eye(4))


def test_x_state_matches_general_on_thermal():
    rho = thermal_state_closed(REF).rho
    assert concurrence_x_state(rho).value == pytest.approx(concurrence_general(rho).value, abs=1e-10)
    assert concurrence_x_state(np.diag([0.1, 0.2, 0.3, 0.4])).value == 0
    with pytest.raises(InvalidDensityMatrixError):
        concurrence_x_state(np.full((4, 4), 0.25))


@pytest.mark.parametrize("p", random_params(np.random.default_rng(2), 15))
def test_x_state_on_output_is_closed_form(p):
    from xxzteleport.channel import output_state_closed
    s = InputState(0.6, 0.2)
    co = channel_coefficients(p)
    expected = max(co.r4 * math.sin(1.2) - 2 * co.r1, 0)
    assert concurrence_x_state(output_state_closed(p, s).rho_out).value == pytest.approx(expected, abs=1e-14)


def test_reference_values():
    co = channel_coefficients(REF)
    c = output_concurrence_closed(REF, QUARTER)
    assert c == pytest.approx((co.a4 - 2 * co.a1) / co.Z2, rel=1e-12)
    assert c == pytest.approx(0.06729960243278182, abs=1e-12)
    f = fidelity_closed(REF, QUARTER).value
    assert f == pytest.approx((co.a3 + 0.5 * (co.a2 - co.a3 + co.a4)) / co.Z2, rel=1e-12)
    assert f == pytest.approx(0.5336498012163908, abs=1e-12)
    out = apply_channel_general(thermal_state_oracle(REF).rho, input_density(QUARTER))
    assert concurrence_general(out).value == pytest.approx(c, abs=1e-10)
    assert fidelity_general(input_density(QUARTER), out).value == pytest.approx(f, abs=1e-10)


@pytest.mark.parametrize("T", [0.01, 0.5, 2])
@pytest.mark.parametrize("theta", [0.2, math.pi / 4])
def test_ferromagnetic_isotropic_never_teleports(T, theta):
    for B in (0.0, 0.5, 2.0):
        assert output_concurrence_closed(ModelParams(-1, 1, B, 0, T), InputState(theta)) == 0


def test_inhomogeneity_plateau():
    # zero-T limit: a4/Z^2 -> J^2/eta^2 = 1/2, a1/Z^2 -> 0
    p = ModelParams(-1, 1, 0, 1, 0.01)
    c = output_concurrence_closed(p, QUARTER)
    out = apply_channel_general(thermal_state_oracle(p).rho, input_density(QUARTER))
    assert c == pytest.approx(concurrence_general(out).value, abs=1e-10)
    assert c == pytest.approx(0.5, abs=1e-9)


def test_fidelity_basics():
    rng = np.random.default_rng(4)
    for _ in range(5):
        rho = random_density(rng)
        assert fidelity_general(rho, rho).value == pytest.approx(1.0, abs=1e-10)
    assert fidelity_general(np.diag([1.0, 0, 0, 0]), np.diag([0, 0, 0, 1.0])).value == 0


@pytest.mark.parametrize("seed", range(5))
def test_pure_input_fidelity_is_overlap(seed):
    rng = np.random.default_rng(seed)
    s = InputState(rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi))
    rho_out = random_density(rng)
    f = fidelity_general(input_density(s), rho_out).value
    assert f == pytest.approx(pure_state_fidelity(s.vector, rho_out), abs=1e-9)


def test_fidelity_limits():
    f_hot = fidelity_closed(ModelParams(1, 1, 1, 1, 1e4), InputState(0.3)).value
    assert f_hot == pytest.approx(0.25, abs=1e-3)
    f_above = fidelity_closed(ModelParams(1, 1, 3, 0, 1e-3), InputState(math.pi / 6)).value
    assert f_above == pytest.approx(0.5 * math.sin(math.pi / 3) ** 2, abs=1e-3)


def test_linear_in_input_concurrence():
    # C_in = 1 at theta = pi/4, C_in = 0.5 at theta = pi/12
    co = channel_coefficients(REF)
    c1 = output_concurrence_closed(REF, QUARTER)
    c_half = output_concurrence_closed(ModelParams(1, 1, 0, 0, 0.3), InputState(math.pi / 12))
    co3 = channel_coefficients(ModelParams(1, 1, 0, 0, 0.3))
    c1_cold = output_concurrence_closed(ModelParams(1, 1, 0, 0, 0.3), QUARTER)
    assert c1_cold - c_half == pytest.approx(0.5 * co3.r4, abs=1e-12)
    assert c1 > 0 and co.r4 > 0


def test_closed_vs_general_grid():
    rng = np.random.default_rng(9)
    for p in random_params(rng, 100):
        s = InputState(rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi))
        out = apply_channel_general(thermal_state_oracle(p).rho, input_density(s))
        assert abs(output_concurrence_closed(p, s) - concurrence_general(out).value) <= 1e-10
        assert abs(fidelity_closed(p, s).value - fidelity_general(input_density(s), out).value) <= 1e-8


params = st.builds(
    ModelParams,
    J=st.floats(0.1, 3) | st.floats(-3, -0.1),
    lam=st.floats(0.05, 3),
    B=st.floats(-5, 5),
    b=st.floats(-5, 5),
    T=st.floats(0.05, 10),
)
inputs = st.builds(InputState, theta=st.floats(0, math.pi / 2), phi=st.floats(0, 6.28))


@settings(max_examples=100, deadline=None)
@given(params, inputs, st.floats(0, 6.28))
def test_symmetries_and_range(p, s, phi):
    c = output_concurrence_closed(p, s)
    f = fidelity_closed(p, s).value
    assert 0 <= c <= 1 and 0 <= f <= 1
    for q in (p.with_(B=-p.B), p.with_(b=-p.b)):
        assert output_concurrence_closed(q, s) == pytest.approx(c, abs=1e-12)
        assert fidelity_closed(q, s).value == pytest.approx(f, abs=1e-12)
    shifted = InputState(s.theta, phi)
    assert output_concurrence_closed(p, shifted) == pytest.approx(c, abs=1e-12)
    assert fidelity_closed(p, shifted).value == pytest.approx(f, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(inputs)
def test_perfect_channel(s):
    out = apply_channel_general(projector(SINGLET), input_density(s))
    assert fidelity_general(input_density(s), out).value == pytest.approx(1.0, abs=1e-12)
    assert concurrence_general(out).value == pytest.approx(input_concurrence(s), abs=1e-12)
