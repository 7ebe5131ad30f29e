"""Pure permutation-symmetric states and measurement/witness parameters.

Symmetric states are stored as amplitude vectors over the Dicke basis
``|D^k_N>``, where ``k`` counts qubits in ``|1>`` (the ``sigma_z = -1``
eigenstate).  Vectors in Bloch space and measurement directions use the
component order ``(x, y, z)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .exceptions import DomainError

NORM_TOL = 1e-12


def _readonly(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SymmetricState:
    """Pure state of ``n_qubits`` qubits living in the symmetric subspace.

    ``amplitudes[k]`` is the coefficient of the Dicke state with ``k``
    excitations.
    """

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        if self.n_qubits < 2:
            raise DomainError(f"need at least 2 qubits, got N={self.n_qubits}")
        if amps.shape != (self.n_qubits + 1,):
            raise DomainError(
                f"expected {self.n_qubits + 1} amplitudes for N={self.n_qubits}, "
                f"got {amps.shape[0]}"
            )
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"amplitudes are not normalised (|psi|^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @classmethod
    def from_vector(cls, vector, normalize=True):
        """Build a state from an arbitrary nonzero vector of length N+1."""
        v = np.asarray(vector, dtype=complex).ravel()
        if normalize:
            nrm = np.linalg.norm(v)
            if nrm == 0:
                raise DomainError("cannot normalise the zero vector")
            v = v / nrm
        return cls(v.shape[0] - 1, v)

    def __len__(self):
        return self.n_qubits + 1


@dataclass(frozen=True)
class BlochConfig:
    """Product state given by one Bloch vector per qubit, shape ``(N, 3)``."""

    vectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3:
            raise DomainError(f"Bloch vectors must have shape (N, 3), got {v.shape}")
        norms = np.linalg.norm(v, axis=1)
        if np.any(norms > 1 + 1e-12):
            raise DomainError(f"Bloch vector norm exceeds 1 (max {norms.max()!r})")
        object.__setattr__(self, "vectors", _readonly(v))

    @property
    def n_qubits(self):
        return self.vectors.shape[0]


def unit_vector(theta, phi):
    """Unit vector with polar angle ``theta`` and azimuth ``phi``."""
    return np.array(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )


@dataclass(frozen=True)
class MeasurementSettings:
    """The two per-qubit measurement directions.

    Planar settings use ``m0 = z`` and ``m1 = (sin theta, 0, cos theta)``.
    General settings hold the polar/azimuthal angles of both directions.
    """

    mode: str
    theta: float = 0.0
    angles: tuple = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.mode not in ("planar", "general"):
            raise DomainError(f"mode must be 'planar' or 'general', got {self.mode!r}")
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        if len(self.angles) != 4:
            raise DomainError("general settings need four angles (theta0, phi0, theta1, phi1)")

    @classmethod
    def planar(cls, theta):
        return cls("planar", theta=theta)

    @classmethod
    def general(cls, theta0, phi0, theta1, phi1):
        return cls("general", angles=(theta0, phi0, theta1, phi1))

    @property
    def m0(self):
        if self.mode == "planar":
            return np.array([0.0, 0.0, 1.0])
        return unit_vector(self.angles[0], self.angles[1])

    @property
    def m1(self):
        if self.mode == "planar":
            return np.array([np.sin(self.theta), 0.0, np.cos(self.theta)])
        return unit_vector(self.angles[2], self.angles[3])

    def as_general(self):
        """The same directions expressed as general-mode angles."""
        if self.mode == "general":
            return self
        return MeasurementSettings.general(0.0, 0.0, self.theta, 0.0)

    def to_dict(self):
        if self.mode == "planar":
            return {"mode": "planar", "theta": self.theta}
        t0, p0, t1, p1 = self.angles
        return {"mode": "general", "theta0": t0, "phi0": p0, "theta1": t1, "phi1": p1}


@dataclass(frozen=True)
class WitnessParams:
    """Coefficients of the two-body combination ``a/2 S00 + b S01 + g/2 S11``."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, a):
        return cls(*np.asarray(a, dtype=float).ravel()[:3])

    def as_array(self):
        return np.array([self.alpha, self.beta, self.gamma])

    def is_zero(self):
        return self.alpha == 0 and self.beta == 0 and self.gamma == 0

    def normalized(self):
        """Rescale onto the unit sphere; the witness is invariant under c > 0."""
        if self.is_zero():
            raise DomainError("witness parameters are all zero")
        a = self.as_array()
        return WitnessParams.from_array(a / np.linalg.norm(a))

    def scaled(self, c):
        return WitnessParams.from_array(c * self.as_array())

    def __neg__(self):
        return self.scaled(-1.0)

    def to_dict(self):
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}


def _check_n(N, minimum):
    if int(N) != N or N < minimum:
        raise DomainError(f"number of qubits must be an integer >= {minimum}, got {N!r}")
    return int(N)


def dicke(N, k):
    """Dicke state ``|D^k_N>`` with ``k`` excitations."""
    N = _check_n(N, 2)
    if int(k) != k or not 0 <= k <= N:
        raise DomainError(f"excitation number k must satisfy 0 <= k <= {N}, got {k!r}")
    amps = np.zeros(N + 1, dtype=complex)
    amps[int(k)] = 1.0
    return SymmetricState(N, amps)


def ghz(N):
    """GHZ state ``(|D^0_N> + |D^N_N>)/sqrt(2)``; requires N >= 3."""
    N = _check_n(N, 3)
    amps = np.zeros(N + 1, dtype=complex)
    amps[0] = amps[N] = 1 / np.sqrt(2)
    return SymmetricState(N, amps)


def binomial_weights(N):
    """``sqrt(C(N, k) / 2^N)`` for k = 0..N, stable for large N."""
    k = np.arange(N + 1)
    log_w = gammaln(N + 1) - gammaln(k + 1) - gammaln(N - k + 1) - N * np.log(2.0)
    return np.exp(0.5 * log_w)


def spin_squeezed(N, chi):
    """One-axis-twisted coherent state along x with twisting strength ``chi``.

    Amplitudes are ``sqrt(C(N,k)/2^N) exp(-i chi (k - N/2)^2)``.
    """
    N = _check_n(N, 2)
    k = np.arange(N + 1)
    amps = binomial_weights(N) * np.exp(-1j * chi * (k - N / 2) ** 2)
    # log-gamma weights are accurate to ~1e-15 relative; renormalise the residue
    amps = amps / np.linalg.norm(amps)
    return SymmetricState(N, amps)


def dicke_ghz_superposition(N, omega):
    """``cos(omega)|D^2_N> + sin(omega)|GHZ_N>``; requires N >= 3."""
    N = _check_n(N, 3)
    amps = np.zeros(N + 1, dtype=complex)
    amps[2] = np.cos(omega)
    s = np.sin(omega) / np.sqrt(2)
    amps[0] += s
    amps[N] += s
    return SymmetricState(N, amps)
