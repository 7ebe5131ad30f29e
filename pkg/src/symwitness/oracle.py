"""Brute-force references in the full ``2^N`` Hilbert space.

These routines build operators literally from single-site Pauli matrices
and serve as independent checks of the symmetric-subspace fast paths.
Qubit 1 is the most significant bit of a computational-basis index, and
``|0>`` is the ``sigma_z = +1`` state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np
import scipy.sparse as sp

from .exceptions import DomainError, SizeLimitError
from .states import MeasurementSettings, SymmetricState, WitnessParams
from .witness import CorrelationPoint, form_matrix

MAX_STATE_QUBITS = 8
MAX_OPERATOR_QUBITS = 12

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class FullState:
    """State vector (1-D) or density matrix (2-D) on ``N`` qubits."""

    n_qubits: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = np.asarray(self.data, dtype=complex)
        dim = 2**self.n_qubits
        if d.shape not in ((dim,), (dim, dim)):
            raise DomainError(f"data of shape {d.shape} does not fit N={self.n_qubits}")
        norm = np.vdot(d, d).real if d.ndim == 1 else np.trace(d).real
        if abs(norm - 1) > 1e-12:
            raise DomainError(f"state is not normalised (got {norm!r})")
        object.__setattr__(self, "data", d)

    @property
    def is_pure(self):
        return self.data.ndim == 1

    def density(self):
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return self.data

    def expectation(self, op):
        if self.is_pure:
            return float(np.vdot(self.data, op @ self.data).real)
        return float(np.real((op.multiply(self.data.T)).sum() if sp.issparse(op)
                             else np.sum(op * self.data.T)))


def _check_size(N, cap):
    if N > cap:
        raise SizeLimitError(f"full-space computation capped at N={cap}, got N={N}")


def embed_symmetric(state: SymmetricState) -> FullState:
    N = state.n_qubits
    _check_size(N, MAX_STATE_QUBITS)
    weights = np.array([bin(i).count("1") for i in range(2**N)])
    norms = np.array([np.sqrt(comb(N, k)) for k in range(N + 1)])
    return FullState(N, state.amplitudes[weights] / norms[weights])


def site_operator(N, op, i):
    """``op`` on qubit ``i`` (0-based), identity elsewhere, as a sparse matrix."""
    left = sp.identity(2**i, format="csr")
    right = sp.identity(2 ** (N - i - 1), format="csr")
    return sp.kron(sp.kron(left, sp.csr_matrix(op)), right, format="csr")


def _direction_op(m):
    return m[0] * PAULI[0] + m[1] * PAULI[1] + m[2] * PAULI[2]


def full_pair_operator(N, m_a, m_b):
    """``sum_{i != j} (m_a.sigma)^(i) (m_b.sigma)^(j)`` as a sparse 2^N matrix."""
    _check_size(N, MAX_OPERATOR_QUBITS)
    A = [site_operator(N, _direction_op(m_a), i) for i in range(N)]
    B = A if np.array_equal(m_a, m_b) else [site_operator(N, _direction_op(m_b), i) for i in range(N)]
    total = sp.csr_matrix((2**N, 2**N), dtype=complex)
    for i in range(N):
        for j in range(N):
            if i != j:
                total = total + A[i] @ B[j]
    return total


def full_correlation_operator(N, meas: MeasurementSettings, pair_label):
    dirs = {"0": meas.m0, "1": meas.m1}
    if pair_label not in ("00", "01", "11"):
        raise DomainError(f"pair label must be one of 00, 01, 11; got {pair_label!r}")
    return full_pair_operator(N, dirs[pair_label[0]], dirs[pair_label[1]])


def full_correlation_point(state: FullState, meas: MeasurementSettings) -> CorrelationPoint:
    N = state.n_qubits
    vals = [state.expectation(full_correlation_operator(N, meas, lab)) for lab in ("00", "01", "11")]
    return CorrelationPoint(*vals)


@lru_cache(maxsize=8)
def _axis_pair_operators(N):
    eye = np.eye(3)
    return {(a, b): full_pair_operator(N, eye[a], eye[b]) for a in range(3) for b in range(a, 3)}


def full_correlation_tensor(state: FullState):
    """3x3 tensor of axis-pair correlators evaluated in the full space."""
    ops = _axis_pair_operators(state.n_qubits)
    T = np.empty((3, 3))
    for (a, b), op in ops.items():
        T[a, b] = T[b, a] = state.expectation(op)
    return T


def _bell_states():
    s = 1 / np.sqrt(2)
    return [
        np.array([s, 0, 0, s], dtype=complex),
        np.array([s, 0, 0, -s], dtype=complex),
        np.array([0, s, s, 0], dtype=complex),
        np.array([0, s, -s, 0], dtype=complex),
    ]


def smolin_state() -> FullState:
    """Equal mixture of matching Bell pairs on qubits (1,2) and (3,4)."""
    rho = np.zeros((16, 16), dtype=complex)
    for b in _bell_states():
        v = np.kron(b, b)
        rho += np.outer(v, v.conj()) / 4
    return FullState(4, rho)


def product_tensors(configs):
    """Correlation tensors of product states; ``configs`` has shape (S, N, 3)."""
    c = np.asarray(configs, dtype=float)
    tot = c.sum(axis=1)
    return np.einsum("sa,sb->sab", tot, tot) - np.einsum("sna,snb->sab", c, c)


def _random_unit(rng, shape):
    v = rng.normal(size=shape + (3,))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _structured_configs(N, B, m0, m1):
    _, vecs = np.linalg.eigh(B)
    dirs = [vecs[:, i] for i in range(3)] + [np.asarray(m0), np.asarray(m1)] + list(np.eye(3))
    out = []
    for d in dirs:
        d = d / np.linalg.norm(d)
        for n_up in {N, N // 2, (N + 1) // 2}:
            out.append(np.vstack([np.tile(d, (n_up, 1)), np.tile(-d, (N - n_up, 1))]))
    return np.array(out)


def brute_max_separable(N, params: WitnessParams, meas: MeasurementSettings, samples=10_000, seed=0):
    """Largest ``a/2 S00 + b S01 + g/2 S11`` found over pure product states.

    Random uniform Bloch configurations are combined with structured ones
    (all qubits along, or split evenly across, each eigen-axis of the form
    and each measurement axis).
    """
    if samples < 1000:
        raise DomainError(f"need at least 1000 samples, got {samples}")
    rng = np.random.default_rng(seed)
    B = form_matrix(params, meas.m0, meas.m1)
    configs = np.concatenate(
        [_random_unit(rng, (samples, N)), _structured_configs(N, B, meas.m0, meas.m1)]
    )
    m0, m1 = meas.m0, meas.m1
    u = configs @ m0
    v = configs @ m1

    def pair(p, q):
        return p.sum(1) * q.sum(1) - (p * q).sum(1)

    vals = params.alpha / 2 * pair(u, u) + params.beta * pair(u, v) + params.gamma / 2 * pair(v, v)
    return float(vals.max())


def spectral_minimum(T, N, mode="general"):
    """Exact minimum of ``<A>`` over all witness parameters for tensor ``T``.

    Scaling the form so that ``F = 1`` confines its eigenvalues to
    ``[-1/N, 1/(N^2-N)]``; by the trace inequality the best form is
    diagonal in the eigenbasis of ``T``, taking the favourable endpoint on
    each eigen-axis, with one axis dropped (two settings give rank <= 2).
    Planar settings keep only the x-z block of ``T``.
    """
    T = np.asarray(T, dtype=float)
    if mode == "planar":
        T = T[np.ix_([0, 2], [0, 2])]
    t = np.linalg.eigvalsh((T + T.T) / 2)
    gain = np.maximum(t / (N * N - N), -t / N)
    return float(1.0 - np.sort(gain)[-2:].sum())
