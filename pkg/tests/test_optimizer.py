import numpy as np
import pytest

from symwitness import (
    DomainError,
    GridOptions,
    MeasurementSettings,
    WitnessParams,
    chi_scan,
    dicke,
    dicke_sweep,
    ghz,
    min_eigen_witness,
    minimize_eigen_witness,
    minimize_witness,
    omega_scan,
    spin_squeezed,
    theta_window,
    witness_expectation,
)
from symwitness import oracle
from symwitness.optimizer import negative_intervals
from symwitness.witness import correlation_tensor


def test_dicke_100_planar_near_half():
    res = minimize_witness(dicke(100, 50), "planar")
    assert res.best_value == pytest.approx(-0.5, abs=0.05)
    # reported parameters reproduce the reported value
    assert witness_expectation(dicke(100, 50), res.best_params, res.best_meas) == pytest.approx(res.best_value, abs=1e-12)
    assert res.best_value <= res.grid_value


@pytest.mark.parametrize("N", [3, 4, 5, 6, 18])
def test_dicke_planar_closed_form(N):
    expected = -N / (2 * (N - 1)) if N % 2 == 0 else -(N - 1) / (2 * N)
    assert minimize_witness(dicke(N, (N + 1) // 2), "planar").best_value == pytest.approx(expected, abs=1e-6)


def test_dicke_18_8_planar():
    assert minimize_witness(dicke(18, 8), "planar").best_value == pytest.approx(-0.301, abs=0.005)


def test_dicke_8_3_general():
    assert minimize_witness(dicke(8, 3), "general").best_value == pytest.approx(-0.0714, abs=0.003)


def test_spin_squeezed_3_general():
    res = minimize_witness(spin_squeezed(3, 0.8261), "general")
    assert res.best_value == pytest.approx(-0.430, abs=0.005)
    assert res.converged


@pytest.mark.parametrize("mode", ["planar", "general"])
def test_ghz_on_boundary(mode):
    res = minimize_witness(ghz(10), mode)
    assert -1e-6 <= res.best_value <= 1e-3


@pytest.mark.parametrize("state,mode", [
    (dicke(7, 2), "general"),
    (spin_squeezed(12, 0.1), "general"),
    (spin_squeezed(20, 0.05), "planar"),
    (dicke(9, 4), "planar"),
])
def test_optimizer_agrees_with_spectral_oracle(state, mode):
    T = correlation_tensor(state)
    exact = oracle.spectral_minimum(T, state.n_qubits, mode)
    res = minimize_witness(state, mode)
    assert res.best_value >= exact - 1e-9
    assert res.best_value == pytest.approx(exact, abs=1e-4)


def test_near_optimal_seeds_listed():
    opts = GridOptions(near_optimal_tol=0.05)
    res = minimize_witness(dicke(6, 3), "planar", opts)
    assert len(res.near_optimal) > 1
    for val, params, meas in res.near_optimal:
        assert val <= res.best_value + opts.near_optimal_tol
        assert witness_expectation(dicke(6, 3), params, meas) == pytest.approx(val, abs=1e-9)


def test_chi_zero_separable():
    recs = chi_scan(5, [0.0], "general")
    assert recs[0].min_expectation >= -1e-6


def test_scan_workers_do_not_change_results():
    grid = [0.05, 0.1, 0.2]
    a = chi_scan(6, grid, "general", workers=1)
    b = chi_scan(6, grid, "general", workers=2)
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]


def test_scan_grid_validation():
    with pytest.raises(DomainError):
        chi_scan(4, [0.2, 0.1])
    with pytest.raises(DomainError):
        omega_scan(4, [0.1, 0.2])


def test_dicke_sweep_records():
    recs = dicke_sweep(np.arange(3, 7))
    assert [r.value for r in recs] == [3, 4, 5, 6]
    assert all(r.min_expectation < 0 for r in recs)


def test_theta_window_n100():
    # orientation of the coefficient triple: see README
    win = theta_window(dicke(100, 50), -WitnessParams(1, 1.13, -1.14))
    lo, hi = win.widest
    assert lo == pytest.approx(0, abs=1e-4)
    assert hi == pytest.approx(0.196, abs=0.005)


def test_theta_window_literal_triple_empty():
    assert not theta_window(dicke(100, 50), WitnessParams(1, 1.13, -1.14))


def test_theta_window_ghz_empty():
    rng = np.random.default_rng(2)
    for _ in range(5):
        assert not theta_window(ghz(6), WitnessParams.from_array(rng.normal(size=3)), grid_points=256)


def test_negative_intervals_simple():
    iv = negative_intervals(np.sin, np.linspace(0.5, 10, 200), xtol=1e-12)
    assert len(iv) == 2
    assert iv[0][0] == pytest.approx(np.pi, abs=1e-8)
    assert iv[0][1] == pytest.approx(2 * np.pi, abs=1e-8)
    assert iv[1][1] == 10


def test_min_eigen_floor_random_params():
    rng = np.random.default_rng(0)
    for _ in range(200):
        params = WitnessParams.from_array(rng.normal(size=3))
        meas = MeasurementSettings.general(*rng.uniform(0, 2 * np.pi, 4))
        val, state = min_eigen_witness(4, params, meas)
        assert val >= -1 - 1e-6
        assert witness_expectation(state, params, meas) == pytest.approx(val, abs=1e-10)


def test_min_eigen_matches_dense():
    params, meas = WitnessParams(0.3, -0.8, 0.5), MeasurementSettings.general(0.2, 0.4, 1.7, 2.5)
    from symwitness import witness_operator

    dense = np.linalg.eigvalsh(witness_operator(11, params, meas).matrix)[0]
    assert min_eigen_witness(11, params, meas)[0] == pytest.approx(dense, abs=1e-12)


def test_eigen_minimum_small_n():
    res = minimize_eigen_witness(10)
    assert res.value == pytest.approx(-0.6710, abs=1e-3)
    # no random parameter choice beats the reduced search
    rng = np.random.default_rng(1)
    for _ in range(200):
        params = WitnessParams.from_array(rng.normal(size=3))
        meas = MeasurementSettings.general(*rng.uniform(0, 2 * np.pi, 4))
        assert min_eigen_witness(10, params, meas)[0] >= res.value - 1e-9
