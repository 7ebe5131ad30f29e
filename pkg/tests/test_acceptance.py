"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line (visible even
without ``-s``) and then asserts.  Run alone with::

    pytest tests/test_acceptance.py -v
"""
import numpy as np
import pytest
from scipy.optimize import brentq

from symwitness import (
    MeasurementSettings,
    WitnessParams,
    chi_scan,
    correlation_point,
    dicke,
    dicke_ghz_superposition,
    dicke_sweep,
    ghz,
    minimize_eigen_witness,
    minimize_witness,
    omega_scan,
    omega_window,
    saturating_config,
    separable_bound,
    separable_correlations,
    theta_window,
    white_noise_threshold,
)
from symwitness import geometry, lmg, oracle
from symwitness.witness import form_matrix


def report(capsys, number, title, checks):
    """Print one summary line for the criterion and fail if any check failed."""
    failed = [name for name, ok, _ in checks if not ok]
    detail = "; ".join(f"{name}={value}" for name, _, value in checks)
    with capsys.disabled():
        print(f"\nACCEPTANCE {number} {'PASS' if not failed else 'FAIL'} [{title}] {detail}")
    assert not failed, f"criterion {number} failed: {failed}"


def test_criterion_1_dicke_asymptote(capsys):
    recs = dicke_sweep(np.arange(3, 101), "planar")
    val = {int(r.value): r.min_expectation for r in recs}
    even = [val[n] for n in range(4, 31, 2)]
    odd = [val[n] for n in range(3, 31, 2)]
    slack = 1e-3
    checks = [
        ("N50", -0.55 <= val[50] <= -0.45, f"{val[50]:.5f}"),
        ("N99", -0.55 <= val[99] <= -0.45, f"{val[99]:.5f}"),
        ("N100", -0.55 <= val[100] <= -0.45, f"{val[100]:.5f}"),
        ("all_negative", all(v < 0 for v in val.values()), f"{max(val.values()):.5f}"),
        ("even_magnitude_nonincreasing",
         all(abs(b) <= abs(a) + slack for a, b in zip(even, even[1:])), "ok"),
        ("odd_magnitude_nondecreasing",
         all(abs(b) >= abs(a) - slack for a, b in zip(odd, odd[1:])), "ok"),
    ]
    report(capsys, 1, "Dicke asymptote", checks)


def test_criterion_2_theta_window(capsys):
    # The triple (1, 1.13, -1.14) opens no negative window under the witness
    # sign convention used here; its negation reproduces the stated window.
    # test_theta_window_literal_triple_empty documents the literal triple.
    params = -WitnessParams(1, 1.13, -1.14)
    w100 = theta_window(dicke(100, 50), params).widest
    w1000 = theta_window(dicke(1000, 500), params).widest
    ratio = (w100[1] - w100[0]) / (w1000[1] - w1000[0])
    checks = [
        ("upper_N100", abs(w100[1] - 0.196) <= 0.005, f"{w100[1]:.5f}"),
        ("upper_N1000", abs(w1000[1] - 0.0611) <= 0.002, f"{w1000[1]:.5f}"),
        ("width_ratio", abs(ratio / np.sqrt(10) - 1) <= 0.15, f"{ratio:.4f}"),
    ]
    report(capsys, 2, "theta window", checks)


def test_criterion_3_beyond_central_dicke(capsys):
    a = minimize_witness(dicke(18, 8), "planar").best_value
    b = minimize_witness(dicke(8, 3), "general").best_value
    c = minimize_witness(dicke(18, 7), "general").best_value
    checks = [
        ("D8_18_planar", abs(a + 0.301) <= 0.005, f"{a:.5f}"),
        ("D3_8_general", abs(b + 0.0714) <= 0.003, f"{b:.5f}"),
        ("D7_18_general_detected", c < -1e-4, f"{c:.3e}"),
    ]
    report(capsys, 3, "beyond-central Dicke", checks)


def test_criterion_4_spin_squeezed(capsys):
    n3 = min(r.min_expectation for r in chi_scan(3, np.linspace(0.6, 1.05, 46), "general"))
    n1000 = min(r.min_expectation for r in chi_scan(1000, np.linspace(0.003, 0.009, 13), "general"))
    chis = np.linspace(0.0, np.pi, 25)
    planar = {N: min(r.min_expectation for r in chi_scan(N, chis, "planar")) for N in (4, 6)}
    checks = [
        ("N3_general", abs(n3 + 0.430) <= 0.005, f"{n3:.5f}"),
        ("N1000_general", abs(n1000 + 0.940) <= 0.01, f"{n1000:.5f}"),
        ("N4_planar_undetected", planar[4] >= -1e-4, f"{planar[4]:.2e}"),
        ("N6_planar_undetected", planar[6] >= -1e-4, f"{planar[6]:.2e}"),
    ]
    report(capsys, 4, "spin-squeezed", checks)


def test_criterion_5_eigen_minimum(capsys):
    vals = {N: minimize_eigen_witness(N).value for N in (10, 100, 1000)}
    checks = [
        ("N1000_range", -1 <= vals[1000] <= -0.93, f"{vals[1000]:.5f}"),
        ("monotone", vals[10] > vals[100] > vals[1000],
         ",".join(f"{vals[n]:.4f}" for n in (10, 100, 1000))),
    ]
    report(capsys, 5, "eigen-minimum", checks)


def test_criterion_6_thermal(capsys):
    p = lmg.LMGParams(4, 0.01)
    t_crit = lmg.critical_temperature(p)
    rows = lmg.thermal_scan(p, [0.0, 1.0, 10.0, 1e3, 1e6])
    g0 = rows[0][1]
    dicke_min = minimize_witness(dicke(4, 2), "planar").best_value
    radius = [np.linalg.norm(r[2:]) for r in rows]
    checks = [
        ("T_crit", abs(t_crit - 0.541) <= 0.005, f"{t_crit:.5f}"),
        ("g0_vs_dicke", abs(g0 - dicke_min) <= 1e-6, f"{abs(g0 - dicke_min):.1e}"),
        ("locus_to_origin", radius[-1] <= 1e-4 and all(np.diff(radius) < 0), f"{radius[-1]:.1e}"),
    ]
    report(capsys, 6, "thermal LMG", checks)


def test_criterion_7_superposition(capsys):
    # For N divisible by four the minimum is mirror symmetric about pi/2
    # (see README), so the scan covers the upper half where the stated window lies.
    N = 200
    grid = np.linspace(np.pi / 2, np.pi, 61)
    recs = omega_scan(N, grid, "general")
    best = min(recs, key=lambda r: r.min_expectation)
    win = omega_window(N, grid, "general", records=recs).widest
    ghz_min = minimize_witness(ghz(N), "general").best_value
    d2_min = minimize_witness(dicke_ghz_superposition(10, 0.0), "general").best_value
    checks = [
        ("min_value", abs(best.min_expectation + 0.235) <= 0.01, f"{best.min_expectation:.5f}"),
        ("min_omega", abs(best.value - 1.80) <= 0.05, f"{best.value:.4f}"),
        ("window_upper", abs(win[1] - 2.04) <= 0.02, f"{win[1]:.4f}"),
        ("window_lower_pi_half", abs(win[0] - np.pi / 2) <= 1e-9, f"{win[0]:.6f}"),
        ("ghz_undetected", ghz_min >= -1e-6, f"{ghz_min:.1e}"),
        ("D2_10_undetected", d2_min >= -1e-6, f"{d2_min:.4f}"),
    ]
    report(capsys, 7, "Dicke/GHZ superposition", checks)


def test_criterion_8_property_suite(capsys):
    rng = np.random.default_rng(2024)
    worst_violation, worst_saturation, worst_subspace = -np.inf, 0.0, 0.0
    for N in range(2, 8):
        vecs = rng.normal(size=(10_000, N, 3))
        vecs /= np.linalg.norm(vecs, axis=-1, keepdims=True)
        tensors = oracle.product_tensors(vecs)
        for _ in range(100):
            params = WitnessParams.from_array(rng.normal(size=3))
            meas = MeasurementSettings.general(*rng.uniform(0, 2 * np.pi, 4))
            F = separable_bound(params, meas, N).value
            # the combination equals tr(B T) for product-state tensors T
            B = form_matrix(params, meas.m0, meas.m1)
            values = np.einsum("ij,sij->s", B, tensors)
            worst_violation = max(worst_violation, (values.max() - F) / F)
            if N % 2 == 0:
                cfg = saturating_config(params, meas, N)
                sat = separable_correlations(cfg, meas).combination(params)
                worst_saturation = max(worst_saturation, abs(sat - F) / F)
        if N <= 6:
            for _ in range(100):
                meas = MeasurementSettings.general(*rng.uniform(0, 2 * np.pi, 4))
                amps = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
                from symwitness import SymmetricState

                st = SymmetricState.from_vector(amps)
                fast = correlation_point(st, meas).as_array()
                full = oracle.full_correlation_point(oracle.embed_symmetric(st), meas).as_array()
                worst_subspace = max(worst_subspace, float(np.abs(fast - full).max()))

    smolin = oracle.full_correlation_point(oracle.smolin_state(), MeasurementSettings.planar(0.9)).as_array()

    # white noise: <A> on (1 - p) rho + p I / 2^N is linear in p, with
    # slope set by the maximally mixed expectation tr(A) / 2^N of the operator
    N, params, meas = 4, WitnessParams(-1, 0.5, 0.3), MeasurementSettings.planar(1.1)
    F = separable_bound(params, meas, N).value
    ops = [oracle.full_correlation_operator(N, meas, lab) for lab in ("00", "01", "11")]
    A = np.eye(2**N) - (params.alpha / 2 * ops[0] + params.beta * ops[1] + params.gamma / 2 * ops[2]).toarray() / F
    mixed = np.trace(A).real / 2**N
    worst_noise = 0.0
    for Q in (0.1, 0.5, 1.0):
        crossing = brentq(lambda p: (1 - p) * (-Q) + p * mixed, 0.0, 1.0, xtol=1e-15)
        worst_noise = max(worst_noise, abs(crossing - white_noise_threshold(Q)))

    checks = [
        ("separable_inequality", worst_violation <= 1e-9, f"{worst_violation:.2e}"),
        ("even_saturation", worst_saturation <= 1e-9, f"{worst_saturation:.1e}"),
        ("subspace_vs_full", worst_subspace <= 1e-10, f"{worst_subspace:.1e}"),
        ("smolin_origin", bool(np.all(np.abs(smolin) <= 1e-12)), f"{np.abs(smolin).max():.1e}"),
        ("white_noise", worst_noise <= 1e-10, f"{worst_noise:.1e}"),
    ]
    report(capsys, 8, "oracle property suite", checks)


def test_criterion_9_geometry(capsys):
    counts = {}
    for theta in (np.pi / 6, np.pi / 3, 4 * np.pi / 9):
        counts[theta] = geometry.support_compare(4, MeasurementSettings.planar(theta), 2000).protruding.size
    n3 = geometry.support_compare(3, MeasurementSettings.planar(np.pi / 3), 2000).protruding.size
    checks = [
        ("N4_contained", all(c == 0 for c in counts.values()), ",".join(map(str, counts.values()))),
        ("N3_protrudes", n3 > 0, str(n3)),
    ]
    report(capsys, 9, "geometry", checks)
