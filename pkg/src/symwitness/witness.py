"""Separable bound, witness operator and correlation points.

Every two-body quantity is routed through the symmetric correlation
tensor

    T_ab = < sum_{i != j} sigma_a^(i) sigma_b^(j) >,   a, b in {x, y, z},

so that for measurement directions ``m0, m1``

    S_00 = m0 . T m0,   S_01 = m0 . T m1,   S_11 = m1 . T m1

and the witness combination ``alpha/2 S00 + beta S01 + gamma/2 S11`` is
``tr(B T)`` with ``B`` the quadratic-form matrix built by :func:`quad_form`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .exceptions import DegenerateBoundError, DomainError, NotSaturableError
from .states import BlochConfig, MeasurementSettings, SymmetricState, WitnessParams

#: <A> on the maximally mixed state: every two-body correlator vanishes there.
MAXIMALLY_MIXED_EXPECTATION = 1.0

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class QuadraticForm:
    """Quadratic form of the witness coefficients over Bloch components.

    ``matrix`` is always the 3x3 form ``B`` in (x, y, z) order.  In planar mode
    ``coefficients`` holds ``(A_zz, A_zx, A_xx)`` and ``eigenvalues`` is
    ``(lambda_z, lambda_x)``; in general mode ``eigenvalues`` is the sorted
    spectrum of ``B``.
    """

    mode: str
    matrix: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray
    coefficients: tuple | None = None

    @property
    def lambda_min(self):
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self):
        return float(self.eigenvalues[-1])


@dataclass(frozen=True)
class SeparableBound:
    value: float
    active_branch: str  # "aligned" -> (N^2-N) lambda_max, "anti_aligned" -> -N lambda_min


@dataclass(frozen=True)
class CorrelationPoint:
    """Coordinates ``(<S00>, <S01>, <S11>)`` in correlation space."""

    s00: float
    s01: float
    s11: float

    def as_array(self):
        return np.array([self.s00, self.s01, self.s11])

    def combination(self, params: WitnessParams):
        """``alpha/2 S00 + beta S01 + gamma/2 S11`` at this point."""
        return params.alpha / 2 * self.s00 + params.beta * self.s01 + params.gamma / 2 * self.s11


@dataclass(frozen=True)
class SubspaceOperator:
    """Operator restricted to the symmetric subspace, in the Dicke basis."""

    n_qubits: int
    matrix: np.ndarray = field(repr=False)

    def expectation(self, state: SymmetricState):
        _check_dims(state, self.n_qubits)
        psi = state.amplitudes
        return float(np.vdot(psi, self.matrix @ psi).real)

    def is_hermitian(self, tol=1e-12):
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) <= tol)

    def bandwidth(self):
        nz = np.argwhere(np.abs(self.matrix) > 0)
        return int(np.max(np.abs(nz[:, 0] - nz[:, 1]), initial=0))

    def banded(self, bandwidth=2):
        """Upper banded storage as consumed by :func:`scipy.linalg.eig_banded`."""
        n = self.matrix.shape[0]
        ab = np.zeros((bandwidth + 1, n), dtype=self.matrix.dtype)
        for d in range(bandwidth + 1):
            ab[bandwidth - d, d:] = np.diagonal(self.matrix, d)
        return ab


def _check_dims(state, N):
    if state.n_qubits != N:
        raise DomainError(f"state has N={state.n_qubits} qubits, operator expects N={N}")


def _check_unit(v, name):
    v = np.asarray(v, dtype=float)
    if v.shape != (3,) or abs(np.linalg.norm(v) - 1) > UNIT_TOL:
        raise DomainError(f"{name} must be a unit 3-vector, got {v!r}")
    return v


def form_matrix(params: WitnessParams, m0, m1):
    """``B = a/2 m0 m0^T + b/2 (m0 m1^T + m1 m0^T) + g/2 m1 m1^T``."""
    m0 = np.asarray(m0, dtype=float)
    m1 = np.asarray(m1, dtype=float)
    cross = np.outer(m0, m1)
    return (
        params.alpha / 2 * np.outer(m0, m0)
        + params.beta / 2 * (cross + cross.T)
        + params.gamma / 2 * np.outer(m1, m1)
    )


def quad_form(params: WitnessParams, meas: MeasurementSettings) -> QuadraticForm:
    B = form_matrix(params, meas.m0, meas.m1)
    if meas.mode == "planar":
        a, b, g, t = params.alpha, params.beta, params.gamma, meas.theta
        a_zz = a / 2 + b * np.cos(t) + g / 2 * np.cos(t) ** 2
        a_zx = b * np.sin(t) + g / 2 * np.sin(2 * t)
        a_xx = g / 2 * np.sin(t) ** 2
        root = np.sqrt((a_zz - a_xx) ** 2 + a_zx**2)
        lam = np.array([(a_zz + a_xx - root) / 2, (a_zz + a_xx + root) / 2])
        return QuadraticForm("planar", B, lam, (a_zz, a_zx, a_xx))
    return QuadraticForm("general", B, np.linalg.eigvalsh(B))


def bound_from_eigenvalues(lam_min, lam_max, N):
    """``max{-N lambda_min, (N^2 - N) lambda_max}``; works elementwise."""
    return np.maximum(-N * np.asarray(lam_min), (N * N - N) * np.asarray(lam_max))


def separable_bound(params: WitnessParams, meas: MeasurementSettings, N) -> SeparableBound:
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    q = quad_form(params, meas)
    aligned = (N * N - N) * q.lambda_max
    anti = -N * q.lambda_min
    if aligned >= anti:
        return SeparableBound(float(aligned), "aligned")
    return SeparableBound(float(anti), "anti_aligned")


def bound_epsilon(params: WitnessParams, N):
    return 1e-9 * float(np.max(np.abs(params.as_array()))) * N * N


def _checked_bound(params, meas, N):
    F = separable_bound(params, meas, N).value
    if F <= bound_epsilon(params, N):
        raise DegenerateBoundError(
            f"separable bound F={F!r} is degenerate for alpha={params.alpha}, "
            f"beta={params.beta}, gamma={params.gamma}, settings={meas.to_dict()}, N={N}"
        )
    return F


@lru_cache(maxsize=64)
def _spin_sparse(N):
    j = N / 2
    m = j - np.arange(N + 1)
    raise_el = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    jp = sp.diags(raise_el.astype(complex), 1, format="csr")
    jm = jp.conj().T.tocsr()
    jx = ((jp + jm) / 2).tocsr()
    jy = ((jp - jm) / 2j).tocsr()
    jz = sp.diags(m.astype(complex), 0, format="csr")
    return jx, jy, jz


def collective_spin(N):
    """``(Jx, Jy, Jz)`` of spin N/2 in the Dicke basis; index k has m = N/2 - k."""
    if N < 1:
        raise DomainError(f"need N >= 1, got {N}")
    return tuple(SubspaceOperator(N, J.toarray()) for J in _spin_sparse(N))


def _collective_along(N, m):
    jx, jy, jz = _spin_sparse(N)
    return m[0] * jx + m[1] * jy + m[2] * jz


def correlation_operator(N, m_a, m_b) -> SubspaceOperator:
    """``sum_{i != j} (m_a.sigma)^(i) (m_b.sigma)^(j)`` on the symmetric subspace."""
    m_a = _check_unit(m_a, "m_a")
    m_b = _check_unit(m_b, "m_b")
    ja = _collective_along(N, m_a)
    jb = _collective_along(N, m_b)
    op = 2 * (ja @ jb + jb @ ja) - N * float(m_a @ m_b) * sp.identity(N + 1)
    mat = op.toarray()
    return SubspaceOperator(N, (mat + mat.conj().T) / 2)


def witness_operator(N, params: WitnessParams, meas: MeasurementSettings) -> SubspaceOperator:
    F = _checked_bound(params, meas, N)
    m0, m1 = meas.m0, meas.m1
    combo = (
        params.alpha / 2 * correlation_operator(N, m0, m0).matrix
        + params.beta * correlation_operator(N, m0, m1).matrix
        + params.gamma / 2 * correlation_operator(N, m1, m1).matrix
    )
    mat = np.eye(N + 1) - combo / F
    return SubspaceOperator(N, (mat + mat.conj().T) / 2)


@lru_cache(maxsize=16)
def tensor_bands(N):
    """Banded forms of ``K_ab = 2{J_a, J_b} - N delta_ab`` keyed by (a, b), a <= b.

    ``sum_ab B_ab K_ab`` is the combination operator for form matrix ``B``.
    Used by the eigenvalue search, which needs many witness spectra at fixed N.
    """
    J = _spin_sparse(N)
    out = {}
    for a in range(3):
        for b in range(a, 3):
            K = (2 * (J[a] @ J[b] + J[b] @ J[a])).toarray()
            if a == b:
                K -= N * np.eye(N + 1)
            ab = np.zeros((3, N + 1), dtype=complex)
            for d in range(3):
                ab[2 - d, d:] = np.diagonal(K, d)
            out[a, b] = ab
    return out


def correlation_tensor(state: SymmetricState):
    """The 3x3 real symmetric tensor ``T_ab`` of a symmetric pure state."""
    N = state.n_qubits
    psi = state.amplitudes
    v = [J @ psi for J in _spin_sparse(N)]
    T = np.empty((3, 3))
    for a in range(3):
        for b in range(a, 3):
            T[a, b] = T[b, a] = 4 * np.vdot(v[a], v[b]).real - N * (a == b)
    return T


def point_from_tensor(T, meas: MeasurementSettings) -> CorrelationPoint:
    m0, m1 = meas.m0, meas.m1
    return CorrelationPoint(float(m0 @ T @ m0), float(m0 @ T @ m1), float(m1 @ T @ m1))


def correlation_point(state: SymmetricState, meas: MeasurementSettings) -> CorrelationPoint:
    return point_from_tensor(correlation_tensor(state), meas)


def expectation_from_tensor(T, N, params: WitnessParams, meas: MeasurementSettings):
    """``<A>`` for any state (pure or mixed) with correlation tensor ``T``."""
    F = _checked_bound(params, meas, N)
    return MAXIMALLY_MIXED_EXPECTATION - point_from_tensor(T, meas).combination(params) / F


def witness_expectation(state: SymmetricState, params: WitnessParams, meas: MeasurementSettings):
    return expectation_from_tensor(correlation_tensor(state), state.n_qubits, params, meas)


def separable_correlations(config: BlochConfig, meas: MeasurementSettings) -> CorrelationPoint:
    """Correlations of a product state, ``N^2 mean(u)mean(v) - N mean(u v)`` per pair."""
    n = config.vectors
    N = n.shape[0]
    u = n @ meas.m0
    v = n @ meas.m1

    def pair(p, q):
        return float(N * N * p.mean() * q.mean() - N * (p * q).mean())

    return CorrelationPoint(pair(u, u), pair(u, v), pair(v, v))


def _canonical_sign(vec):
    nz = np.flatnonzero(np.abs(vec) > 1e-12)
    if nz.size and vec[nz[0]] < 0:
        return -vec
    return vec


def saturating_config(params: WitnessParams, meas: MeasurementSettings, N) -> BlochConfig:
    """Product configuration reaching the separable bound (even N only)."""
    if N % 2:
        raise NotSaturableError(
            f"N={N} is odd: zero mean and unit spread of the rotated z-component "
            "cannot hold together, so the bound is not reached exactly"
        )
    _checked_bound(params, meas, N)
    branch = separable_bound(params, meas, N).active_branch
    q = quad_form(params, meas)
    if meas.mode == "planar":
        a_zz, a_zx, a_xx = q.coefficients
        lam, M = np.linalg.eigh(np.array([[a_zz, a_zx / 2], [a_zx / 2, a_xx]]))
        # columns of M are (z, x) eigenvectors; embed into (x, y, z)
        vecs = [np.array([c[1], 0.0, c[0]]) for c in (_canonical_sign(M[:, i]) for i in range(2))]
    else:
        lam, M = np.linalg.eigh(q.matrix)
        vecs = [_canonical_sign(M[:, i]) for i in range(3)]
    if branch == "aligned":
        out = np.tile(vecs[-1], (N, 1))
    else:
        out = np.vstack([np.tile(vecs[0], (N // 2, 1)), np.tile(-vecs[0], (N // 2, 1))])
    out /= np.linalg.norm(out, axis=1, keepdims=True)
    return BlochConfig(out)


def white_noise_threshold(Q):
    """Noise fraction ``P* = Q/(Q+1)`` at which a detection of depth ``-Q`` is lost."""
    if Q < 0:
        raise DomainError(f"Q is the magnitude of a negative expectation; got Q={Q!r}")
    return Q / (Q + 1)
