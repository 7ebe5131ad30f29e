import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symwitness import (
    BlochConfig,
    DomainError,
    MeasurementSettings,
    SymmetricState,
    WitnessParams,
    dicke,
    dicke_ghz_superposition,
    ghz,
    spin_squeezed,
)
from symwitness.states import binomial_weights, unit_vector


def test_dicke_basis_vectors():
    assert np.allclose(dicke(2, 1).amplitudes, [0, 1, 0])
    assert np.allclose(dicke(4, 2).amplitudes, [0, 0, 1, 0, 0])


@pytest.mark.parametrize("N,k", [(3, 5), (3, -1), (1, 0)])
def test_dicke_bad_arguments(N, k):
    with pytest.raises(DomainError):
        dicke(N, k)


def test_ghz():
    s = 1 / np.sqrt(2)
    assert np.allclose(ghz(3).amplitudes, [s, 0, 0, s])
    assert np.allclose(ghz(4).amplitudes, [s, 0, 0, 0, s])
    with pytest.raises(DomainError):
        ghz(2)


def test_spin_squeezed_small():
    assert np.allclose(spin_squeezed(2, 0).amplitudes, [0.5, 1 / np.sqrt(2), 0.5])
    assert np.allclose(spin_squeezed(2, np.pi).amplitudes, [-0.5, 1 / np.sqrt(2), -0.5])


def test_spin_squeezed_large_norm():
    a = spin_squeezed(1000, 0.01).amplitudes
    assert abs(np.vdot(a, a).real - 1) < 1e-10


def test_binomial_weights_normalised():
    w = binomial_weights(60)
    assert np.isclose(np.sum(w**2), 1)
    assert np.allclose(w, w[::-1])


def test_superposition_endpoints():
    assert np.allclose(dicke_ghz_superposition(6, 0).amplitudes, dicke(6, 2).amplitudes)
    assert np.allclose(dicke_ghz_superposition(6, np.pi / 2).amplitudes, ghz(6).amplitudes)
    a = dicke_ghz_superposition(10, 1.80).amplitudes
    assert abs(np.vdot(a, a).real - 1) < 1e-12
    with pytest.raises(DomainError):
        dicke_ghz_superposition(2, 0.3)


def test_state_is_immutable():
    s = dicke(4, 1)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1.0


def test_state_rejects_unnormalised():
    with pytest.raises(DomainError):
        SymmetricState(2, np.array([1.0, 1.0, 0.0]))
    s = SymmetricState.from_vector([1.0, 1.0, 0.0])
    assert np.isclose(np.linalg.norm(s.amplitudes), 1)


def test_bloch_config_checks_length():
    BlochConfig(np.array([[0, 0, 1.0], [0.6, 0, 0.8]]))
    with pytest.raises(DomainError):
        BlochConfig(np.array([[0, 0, 1.1], [0, 0, 1.0]]))


def test_planar_settings():
    meas = MeasurementSettings.planar(0.4)
    assert np.allclose(meas.m0, [0, 0, 1])
    assert np.allclose(meas.m1, [np.sin(0.4), 0, np.cos(0.4)])
    g = meas.as_general()
    assert np.allclose(g.m0, meas.m0) and np.allclose(g.m1, meas.m1)


def test_general_settings_unit():
    meas = MeasurementSettings.general(0.3, 1.1, 2.0, -0.4)
    assert np.isclose(np.linalg.norm(meas.m0), 1) and np.isclose(np.linalg.norm(meas.m1), 1)
    assert np.allclose(meas.m1, unit_vector(2.0, -0.4))


def test_params_zero_and_negation():
    assert WitnessParams(0, 0, 0).is_zero()
    p = WitnessParams(1, 1.13, -1.14)
    assert np.allclose((-p).as_array(), [-1, -1.13, 1.14])
    assert np.isclose(np.linalg.norm(p.normalized().as_array()), 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 40), st.floats(0, 2 * np.pi))
def test_spin_squeezed_normalised(N, chi):
    a = spin_squeezed(N, chi).amplitudes
    assert abs(np.vdot(a, a).real - 1) < 1e-12
    assert np.allclose(np.abs(a), binomial_weights(N))
