"""Minimisation of the witness expectation and parameter scans.

The optimiser works on the 3x3 correlation tensor of a state, so one
evaluation costs O(1) regardless of N.  A deterministic grid over unit
coefficient vectors and measurement angles supplies seeds; the best seeds
are refined with Nelder-Mead.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eig_banded, eigvals_banded
from scipy.optimize import brentq, minimize, minimize_scalar

from .exceptions import DomainError, OptimizationError
from .states import (
    MeasurementSettings,
    SymmetricState,
    WitnessParams,
    dicke,
    dicke_ghz_superposition,
    spin_squeezed,
    unit_vector,
)
from .witness import (
    correlation_tensor,
    expectation_from_tensor,
    tensor_bands,
    witness_operator,
)

log = logging.getLogger(__name__)

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class GridOptions:
    """Seed grid and refinement budget.

    ``general_angle_points`` is the number of samples for each of the four
    direction angles; polar angles cover only the upper hemisphere because
    flipping a direction is absorbed by the sign of the coefficients.
    """

    coef_points: int = 26
    theta_points: int = 64
    general_angle_points: int = 8
    n_seeds: int = 10
    max_evals: int = 2000
    atol: float = 1e-8
    near_optimal_tol: float = 1e-3


@dataclass(frozen=True)
class OptResult:
    best_value: float
    best_params: WitnessParams
    best_meas: MeasurementSettings
    evaluations: int
    converged: bool
    grid_value: float
    near_optimal: list = field(default_factory=list, repr=False)


@dataclass(frozen=True)
class ScanRecord:
    variable: str
    value: float
    min_expectation: float
    params: WitnessParams
    meas: MeasurementSettings

    def to_dict(self):
        return {
            self.variable: self.value,
            "min_expectation": self.min_expectation,
            **self.params.to_dict(),
            "meas": self.meas.to_dict(),
        }


@dataclass(frozen=True)
class Window:
    """Maximal intervals of the scan variable with a negative minimum."""

    intervals: list

    @property
    def widest(self):
        if not self.intervals:
            return None
        return max(self.intervals, key=lambda iv: iv[1] - iv[0])

    def __bool__(self):
        return bool(self.intervals)


# --------------------------------------------------------------------------
# vectorised objective


def _values(coefs, g00, g01, g11, cos_t, sin_t, N):
    """``<A>`` for coefficient rows against measurement pairs, broadcasting.

    The form lives in the plane of the two directions, so its nonzero
    eigenvalues follow from the angle between them alone.
    """
    a, b, g = coefs[..., 0], coefs[..., 1], coefs[..., 2]
    a_zz = a / 2 + b * cos_t + g / 2 * cos_t**2
    a_zx = b * sin_t + g * sin_t * cos_t
    a_xx = g / 2 * sin_t**2
    root = np.sqrt((a_zz - a_xx) ** 2 + a_zx**2)
    lam_z = (a_zz + a_xx - root) / 2
    lam_x = (a_zz + a_xx + root) / 2
    F = np.maximum(-N * lam_z, (N * N - N) * lam_x)
    num = a / 2 * g00 + b * g01 + g / 2 * g11
    eps = 1e-9 * np.max(np.abs(coefs), axis=-1) * N * N
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 1.0 - num / F
    return np.where(F > eps, out, np.inf)


def _coef_grid(n):
    polar = (np.arange(n) + 0.5) * np.pi / n
    azim = np.arange(n) * TWO_PI / n
    u, v = np.meshgrid(polar, azim, indexing="ij")
    return np.stack([np.sin(u) * np.cos(v), np.sin(u) * np.sin(v), np.cos(u)], -1).reshape(-1, 3)


def _pair_terms(T, m0, m1):
    g00 = np.einsum("...a,ab,...b->...", m0, T, m0)
    g01 = np.einsum("...a,ab,...b->...", m0, T, m1)
    g11 = np.einsum("...a,ab,...b->...", m1, T, m1)
    cos_t = np.clip(np.einsum("...a,...a->...", m0, m1), -1.0, 1.0)
    sin_t = np.sqrt(1.0 - cos_t**2)
    return g00, g01, g11, cos_t, sin_t


def _meas_from_x(mode, x):
    if mode == "planar":
        return MeasurementSettings.planar(np.mod(x[0], TWO_PI))
    return MeasurementSettings.general(*np.mod(x, TWO_PI))


def _directions(mode, x):
    if mode == "planar":
        return np.array([0.0, 0.0, 1.0]), np.array([np.sin(x[0]), 0.0, np.cos(x[0])])
    return unit_vector(x[0], x[1]), unit_vector(x[2], x[3])


def _grid_seeds(T, N, mode, opts):
    coefs = _coef_grid(opts.coef_points)
    if mode == "planar":
        thetas = (np.arange(opts.theta_points) + 0.5) * np.pi / opts.theta_points
        angles = thetas[:, None]
        m0 = np.broadcast_to([0.0, 0.0, 1.0], (thetas.size, 3))
        m1 = np.stack([np.sin(thetas), np.zeros_like(thetas), np.cos(thetas)], -1)
    else:
        n = opts.general_angle_points
        polar = (np.arange(n) + 0.5) * (np.pi / 2) / n
        azim = np.arange(n) * TWO_PI / n
        tt, pp = np.meshgrid(polar, azim, indexing="ij")
        dir_angles = np.stack([tt.ravel(), pp.ravel()], -1)
        i0, i1 = np.meshgrid(np.arange(len(dir_angles)), np.arange(len(dir_angles)), indexing="ij")
        angles = np.concatenate([dir_angles[i0.ravel()], dir_angles[i1.ravel()]], axis=1)
        m0 = unit_vector(angles[:, 0], angles[:, 1]).T
        m1 = unit_vector(angles[:, 2], angles[:, 3]).T
        keep = np.abs(np.einsum("ij,ij->i", m0, m1)) < 1 - 1e-9
        angles, m0, m1 = angles[keep], m0[keep], m1[keep]
    terms = _pair_terms(T, m0, m1)
    vals = _values(coefs[:, None, :], *(t[None, :] for t in terms), N)
    return coefs, angles, vals


def _scalar_objective(T, N, mode):
    def f(x):
        m0, m1 = _directions(mode, x[3:])
        return float(_values(np.asarray(x[:3]), *_pair_terms(T, m0, m1), N))

    return f


def minimize_tensor(T, N, mode="planar", options: GridOptions | None = None) -> OptResult:
    """Minimise ``<A>`` over witness parameters for a correlation tensor ``T``."""
    if mode not in ("planar", "general"):
        raise DomainError(f"mode must be 'planar' or 'general', got {mode!r}")
    opts = options or GridOptions()
    T = np.asarray(T, dtype=float)
    coefs, angles, vals = _grid_seeds(T, N, mode, opts)
    flat = vals.ravel()
    finite = np.isfinite(flat)
    if not finite.any():
        raise OptimizationError(f"every grid point has a degenerate bound (N={N}, mode={mode})")
    order = np.argsort(np.where(finite, flat, np.inf), kind="stable")
    n_ang = angles.shape[0]

    f = _scalar_objective(T, N, mode)
    evaluations = int(finite.size)
    best_x, best_val, converged = None, np.inf, False
    for idx in order[: opts.n_seeds]:
        if not finite[idx]:
            break
        x0 = np.concatenate([coefs[idx // n_ang], angles[idx % n_ang]])
        res = minimize(
            f,
            x0,
            method="Nelder-Mead",
            options={
                "maxfev": opts.max_evals,
                "xatol": opts.atol,
                "fatol": opts.atol,
                "adaptive": x0.size > 4,
            },
        )
        evaluations += int(res.nfev)
        if res.fun < best_val:
            best_x, best_val, converged = res.x, float(res.fun), bool(res.success)

    # re-evaluate both the refined point and the best raw seed on the
    # reference path so that best <= grid holds exactly
    i0 = order[0]
    grid_params = WitnessParams.from_array(coefs[i0 // n_ang])
    grid_meas = _meas_from_x(mode, angles[i0 % n_ang])
    grid_best = float(expectation_from_tensor(T, N, grid_params, grid_meas))
    params = WitnessParams.from_array(best_x[:3]).normalized()
    meas = _meas_from_x(mode, best_x[3:])
    best_val = float(expectation_from_tensor(T, N, params, meas))
    if grid_best < best_val:
        params, meas, best_val = grid_params, grid_meas, grid_best

    near = []
    for idx in order:
        if not finite[idx] or flat[idx] > best_val + opts.near_optimal_tol:
            break
        near.append(
            (float(flat[idx]), WitnessParams.from_array(coefs[idx // n_ang]),
             _meas_from_x(mode, angles[idx % n_ang]))
        )
    return OptResult(best_val, params, meas, evaluations, converged, grid_best, near)


def minimize_witness(state: SymmetricState, mode="planar", options: GridOptions | None = None) -> OptResult:
    return minimize_tensor(correlation_tensor(state), state.n_qubits, mode, options)


# --------------------------------------------------------------------------
# lowest eigenvalue of the witness


def _lowest(ab):
    w, v = eig_banded(ab, lower=False, select="i", select_range=(0, 0))
    return float(w[0]), v[:, 0]


def _lowest_value(ab):
    # eigenvalue only; the eigenvector back-transform dominates the cost
    return float(eigvals_banded(ab, lower=False, select="i", select_range=(0, 0))[0])


def min_eigen_witness(N, params: WitnessParams, meas: MeasurementSettings):
    """Smallest eigenvalue of the witness on the symmetric subspace and its eigenvector."""
    op = witness_operator(N, params, meas)
    value, vec = _lowest(op.banded(2))
    return value, SymmetricState.from_vector(vec)


@dataclass(frozen=True)
class EigenResult:
    value: float
    params: WitnessParams
    meas: MeasurementSettings
    state: SymmetricState = field(repr=False)


def _form_witness_bands(N, b_z, b_x):
    bands = tensor_bands(N)
    lam_min, lam_max = min(b_z, b_x, 0.0), max(b_z, b_x, 0.0)
    F = max(-N * lam_min, (N * N - N) * lam_max)
    ab = -(b_z * bands[2, 2] + b_x * bands[0, 0]) / F
    ab[2] += 1.0
    return ab


def minimize_eigen_witness(N, points=240) -> EigenResult:
    """Lowest witness eigenvalue over all parameters and settings.

    A collective rotation maps the witness for form ``B`` unitarily onto the
    one for ``R B R^T``, so the spectrum depends on the two nonzero
    eigenvalues of ``B`` only.  The search runs over their ratio, using the
    form ``cos t zz^T + sin t xx^T`` (``m0 = z``, ``m1 = x``); the optimum is
    the same for planar and general settings.
    """
    ts = np.arange(points) * TWO_PI / points

    def f(t):
        return _lowest_value(_form_witness_bands(N, np.cos(t), np.sin(t)))

    vals = np.array([f(t) for t in ts])
    i = int(np.argmin(vals))
    res = minimize_scalar(
        f,
        bounds=(ts[i] - TWO_PI / points, ts[i] + TWO_PI / points),
        method="bounded",
        options={"xatol": 1e-10},
    )
    t = res.x if res.fun < vals[i] else ts[i]
    params = WitnessParams(2 * np.cos(t), 0.0, 2 * np.sin(t)).normalized()
    meas = MeasurementSettings.planar(np.pi / 2)
    value, state = min_eigen_witness(N, params, meas)
    return EigenResult(value, params, meas, state)


# --------------------------------------------------------------------------
# windows and scans


def negative_intervals(func, grid, xtol=1e-8, threshold=1e-9):
    """Intervals of ``grid`` where ``func < -threshold``, endpoints by root finding."""
    grid = np.asarray(grid, dtype=float)
    vals = np.array([func(x) for x in grid])
    neg = vals < -threshold

    def g(x):
        return func(x) + threshold

    intervals = []
    i = 0
    while i < grid.size:
        if not neg[i]:
            i += 1
            continue
        j = i
        while j + 1 < grid.size and neg[j + 1]:
            j += 1
        lo = grid[i] if i == 0 else brentq(g, grid[i - 1], grid[i], xtol=xtol)
        hi = grid[j] if j == grid.size - 1 else brentq(g, grid[j], grid[j + 1], xtol=xtol)
        intervals.append((float(lo), float(hi)))
        i = j + 1
    return intervals


def theta_window(state: SymmetricState, params: WitnessParams, grid_points=2048, xtol=1e-8) -> Window:
    """Ranges of the planar angle in [0, pi/2] where ``<A(theta)>`` is negative."""
    T = correlation_tensor(state)
    N = state.n_qubits

    def f(theta):
        m0, m1 = _directions("planar", [theta])
        val = float(_values(params.as_array(), *_pair_terms(T, m0, m1), N))
        # degenerate bound: no usable witness, count as undetected
        return val if np.isfinite(val) else 1.0

    grid = np.linspace(0.0, np.pi / 2, grid_points)
    return Window(negative_intervals(f, grid, xtol=xtol))


def _check_grid(grid):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) <= 0):
        raise DomainError("scan grid must be a nonempty strictly increasing sequence")
    return grid


def _scan_point(job):
    kind, N, x, mode, opts = job
    if kind == "chi":
        state = spin_squeezed(N, x)
    elif kind == "omega":
        state = dicke_ghz_superposition(N, x)
    else:
        state = dicke(int(x), (int(x) + 1) // 2)
    res = minimize_witness(state, mode, opts)
    return ScanRecord(kind, float(x), res.best_value, res.best_params, res.best_meas)


def _run_scan(kind, N, grid, mode, options, workers):
    jobs = [(kind, N, float(x), mode, options or GridOptions()) for x in grid]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_point, jobs))
    return [_scan_point(j) for j in jobs]


def chi_scan(N, chi_grid, mode="general", options=None, workers=1):
    """Per-``chi`` minimum of ``<A>`` over one-axis-twisted states."""
    return _run_scan("chi", N, _check_grid(chi_grid), mode, options, workers)


def omega_scan(N, omega_grid, mode="general", options=None, workers=1):
    """Per-``omega`` minimum over ``cos(omega) D^2 + sin(omega) GHZ``."""
    if N < 6:
        raise DomainError(f"superposition scans need N >= 6, got N={N}")
    return _run_scan("omega", N, _check_grid(omega_grid), mode, options, workers)


def dicke_sweep(n_values, mode="planar", options=None, workers=1):
    """Minimum of ``<A>`` for ``|D^{ceil(N/2)}_N>`` at each N."""
    return _run_scan("N", None, _check_grid(n_values), mode, options, workers)


def omega_window(N, omega_grid, mode="general", options=None, xtol=1e-4, records=None) -> Window:
    """Negativity intervals of the superposition minimum over ``omega_grid``.

    Pass the output of :func:`omega_scan` on the same grid as ``records`` to
    reuse its grid values; only the bisection steps are then recomputed.
    """
    grid = _check_grid(omega_grid)
    opts = options or GridOptions()
    cache = {}
    if records is not None:
        cache = {r.value: r.min_expectation for r in records}

    def f(omega):
        if omega in cache:
            return cache[omega]
        return minimize_witness(dicke_ghz_superposition(N, omega), mode, opts).best_value

    return Window(negative_intervals(f, grid, xtol=xtol))
