"""Isotropic LMG model: Hamiltonian, Gibbs states and detection temperature.

Thermal states populate every total-spin sector, so they are handled in
the full ``2^N`` space (N <= 12).  Units: ``k_B = 1``, energies in units of
the coupling ``lam``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.optimize import brentq

from .exceptions import DomainError, NotFoundError, SizeLimitError
from .oracle import PAULI, FullState, full_correlation_point, full_correlation_tensor, site_operator
from .optimizer import GridOptions, minimize_tensor
from .states import MeasurementSettings

MAX_QUBITS = 12


@dataclass(frozen=True)
class LMGParams:
    n_qubits: int
    h: float
    lam: float = 1.0

    def __post_init__(self):
        if self.n_qubits < 2:
            raise DomainError(f"need N >= 2, got {self.n_qubits}")
        if self.n_qubits > MAX_QUBITS:
            raise SizeLimitError(f"LMG thermal treatment is capped at N={MAX_QUBITS}")

    @property
    def dicke_ground_state(self):
        """Whether ``lam/N >= h > 0``, where the ground state is ``|D^{ceil(N/2)}_N>``."""
        return self.lam / self.n_qubits >= self.h > 0


def lmg_hamiltonian(p: LMGParams):
    """``-(lam/N) sum_{i<j} (XX + YY) + h sum_i Z`` as a dense real matrix."""
    N = p.n_qubits
    X = [site_operator(N, PAULI[0], i) for i in range(N)]
    Y = [site_operator(N, PAULI[1], i) for i in range(N)]
    H = sp.csr_matrix((2**N, 2**N), dtype=complex)
    for i in range(N):
        for j in range(i + 1, N):
            H = H - (p.lam / N) * (X[i] @ X[j] + Y[i] @ Y[j])
        H = H + p.h * site_operator(N, PAULI[2], i)
    # XX + YY and Z are real in the computational basis
    H = H.toarray().real
    return (H + H.T) / 2


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition of a Hamiltonian, shared across temperatures."""

    energies: np.ndarray
    vectors: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, H):
        e, v = np.linalg.eigh(H)
        return cls(e, v)

    @property
    def n_qubits(self):
        return int(np.log2(self.energies.size))


def _spectrum(H):
    return H if isinstance(H, Spectrum) else Spectrum.of(np.asarray(H))


def thermal_state(H, T) -> FullState:
    """Gibbs state at temperature ``T``; ``T = 0`` gives the ground projector.

    ``H`` may be a Hamiltonian matrix or a precomputed :class:`Spectrum`.
    """
    if T < 0:
        raise DomainError(f"temperature must be non-negative, got T={T!r}")
    spectrum = _spectrum(H)
    e, v = spectrum.energies, spectrum.vectors
    N = spectrum.n_qubits
    if T == 0:
        scale = max(1.0, float(np.abs(e).max()))
        degenerate = np.sum(e - e[0] < 1e-9 * scale)
        if degenerate > 1:
            raise DomainError(f"ground space is {degenerate}-fold degenerate; T=0 state is ambiguous")
        w = np.zeros_like(e)
        w[0] = 1.0
    else:
        w = np.exp(-(e - e[0]) / T)
        w /= w.sum()
    rho = (v * w) @ v.conj().T
    rho = (rho + rho.conj().T) / 2
    return FullState(N, rho / np.trace(rho).real)


def thermal_correlation_point(rho: FullState, meas: MeasurementSettings):
    return full_correlation_point(rho, meas)


def thermal_minimum(H, T, mode="planar", options: GridOptions | None = None):
    """``g(T)``: minimum of ``Tr(rho_T A)`` over witness parameters."""
    rho = thermal_state(H, T)
    return minimize_tensor(full_correlation_tensor(rho), rho.n_qubits, mode, options)


def thermal_scan(p: LMGParams, temperatures, meas=None, mode="planar", options=None):
    """Rows ``(T, g(T), s00, s01, s11)``; correlations at ``meas`` (default the
    Bell-optimal angle ``arccos(ceil(N/2) / (ceil(N/2) + 1))``)."""
    N = p.n_qubits
    if meas is None:
        c = (N + 1) // 2
        meas = MeasurementSettings.planar(np.arccos(c / (c + 1)))
    spectrum = Spectrum.of(lmg_hamiltonian(p))
    rows = []
    for T in temperatures:
        rho = thermal_state(spectrum, T)
        g = minimize_tensor(full_correlation_tensor(rho), N, mode, options).best_value
        pt = thermal_correlation_point(rho, meas)
        rows.append((float(T), g, pt.s00, pt.s01, pt.s11))
    return rows


def critical_temperature(p: LMGParams, options: GridOptions | None = None, mode="planar",
                         t_max=5.0, scan_points=50, xtol=1e-4, max_steps=30):
    """Temperature at which the minimised witness expectation turns non-negative.

    A coarse temperature scan brackets the first sign change of ``g``; the
    witness parameters are re-optimised at every bisection step.
    """
    spectrum = Spectrum.of(lmg_hamiltonian(p))

    def g(T):
        return thermal_minimum(spectrum, T, mode, options).best_value

    temps = np.linspace(0.0, t_max, scan_points + 1)
    prev_T, prev_g = temps[0], g(temps[0])
    if prev_g >= 0:
        raise NotFoundError(f"ground state is not detected (g(0) = {prev_g!r})")
    for T in temps[1:]:
        cur = g(T)
        if cur >= 0:
            return float(brentq(g, prev_T, T, xtol=xtol, maxiter=max_steps))
        prev_T, prev_g = T, cur
    raise NotFoundError(f"no sign change of g(T) in [0, {t_max}]")
