"""Correlation-space geometry: witness half-spaces versus the local polytope."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .exceptions import DomainError, SizeLimitError
from .report import dumps
from .states import MeasurementSettings, WitnessParams
from .witness import quad_form, bound_from_eigenvalues, separable_bound

MAX_POLYTOPE_QUBITS = 200
SUPPORT_TOL = 1e-9


@dataclass(frozen=True)
class HalfSpace:
    """``{c : normal . c <= offset}`` in correlation space."""

    normal: tuple
    offset: float

    def contains(self, point, tol=1e-9):
        return float(np.dot(self.normal, point)) <= self.offset + tol

    def unit(self):
        """Same half-space with a unit normal."""
        n = np.asarray(self.normal)
        s = np.linalg.norm(n)
        return HalfSpace(tuple(n / s), self.offset / s)


@dataclass(frozen=True)
class PolytopeVertexSet:
    n_qubits: int
    vertices: np.ndarray = field(repr=False)

    def support(self, directions):
        """``max_v d . v`` for each row of ``directions``."""
        return (np.asarray(directions, dtype=float) @ self.vertices.T.astype(float)).max(axis=1)


def witness_halfspace(params: WitnessParams, meas: MeasurementSettings, N) -> HalfSpace:
    F = separable_bound(params, meas, N).value
    return HalfSpace((params.alpha / 2, params.beta, params.gamma / 2), F)


def fibonacci_sphere(n):
    """``n`` deterministic, nearly uniform unit vectors."""
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    r = np.sqrt(1 - z**2)
    phi = np.pi * (1 + 5**0.5) * i
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], -1)


def sample_region(N, meas: MeasurementSettings, direction_count):
    if direction_count < 6:
        raise DomainError(f"direction_count must be >= 6, got {direction_count}")
    return [
        witness_halfspace(WitnessParams.from_array(d), meas, N)
        for d in fibonacci_sphere(direction_count)
    ]


def strategy_vertex(counts):
    """Correlation point of a deterministic strategy mix.

    ``counts = (n++, n+-, n-+, n--)`` are the numbers of parties answering
    (M0, M1) = (+1, +1), (+1, -1), (-1, +1) and (-1, -1).
    """
    n1, n2, n3, n4 = counts
    N = n1 + n2 + n3 + n4
    A = n1 + n2 - n3 - n4
    B = n1 - n2 + n3 - n4
    D = n1 - n2 - n3 + n4
    return (A * A - N, A * B - D, B * B - N)


def classical_polytope_vertices(N, hull=False) -> PolytopeVertexSet:
    """Points of all deterministic local strategies, deduplicated.

    With ``hull=True`` only the extreme points of their convex hull are kept.
    """
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    if N > MAX_POLYTOPE_QUBITS:
        raise SizeLimitError(f"polytope enumeration is capped at N={MAX_POLYTOPE_QUBITS}")
    pts = []
    for n1 in range(N + 1):
        n2 = np.arange(N - n1 + 1)[:, None]
        n3 = np.arange(N - n1 + 1)[None, :]
        n2, n3 = np.broadcast_arrays(n2, n3)
        ok = n2 + n3 <= N - n1
        n2, n3 = n2[ok], n3[ok]
        n4 = N - n1 - n2 - n3
        pts.append(np.stack(strategy_vertex((n1, n2, n3, n4)), -1))
    verts = np.unique(np.concatenate(pts).astype(np.int64), axis=0)
    if hull and len(verts) > 4:
        try:
            verts = verts[np.sort(ConvexHull(verts.astype(float)).vertices)]
        except QhullError:
            pass  # flat point sets: keep the deduplicated list
    return PolytopeVertexSet(N, verts)


@dataclass(frozen=True)
class SupportReport:
    """Witness-region bound ``F`` against polytope support, per direction."""

    directions: np.ndarray = field(repr=False)
    witness_support: np.ndarray = field(repr=False)
    polytope_support: np.ndarray = field(repr=False)

    @property
    def excess(self):
        return self.witness_support - self.polytope_support

    @property
    def protruding(self):
        """Indices of directions where ``F`` exceeds the polytope support."""
        return np.flatnonzero(self.excess > SUPPORT_TOL)

    @property
    def max_relative_excess(self):
        """Largest excess relative to ``F``; zero when nothing protrudes."""
        rel = self.excess / np.where(self.witness_support > 0, self.witness_support, np.inf)
        return float(max(rel.max(), 0.0))


def support_compare(N, meas: MeasurementSettings, direction_count=2000, vertices=None) -> SupportReport:
    dirs = fibonacci_sphere(direction_count)
    F = np.empty(len(dirs))
    for i, d in enumerate(dirs):
        q = quad_form(WitnessParams.from_array(d), meas)
        F[i] = bound_from_eigenvalues(q.lambda_min, q.lambda_max, N)
    normals = dirs * np.array([0.5, 1.0, 0.5])
    verts = vertices or classical_polytope_vertices(N)
    return SupportReport(dirs, F, verts.support(normals))


def export_region(halfspaces, vertices, path, n_qubits, meas: MeasurementSettings, states=None):
    """Write half-spaces, polytope vertices and labelled state points as JSON.

    ``states`` is an optional sequence of ``(label, point)`` pairs.
    """
    if not halfspaces:
        raise DomainError("need at least one half-space to export")
    verts = vertices.vertices if isinstance(vertices, PolytopeVertexSet) else vertices
    doc = {
        "n_qubits": int(n_qubits),
        "meas": meas.to_dict(),
        "halfspaces": [
            {"normal": [float(x) for x in h.normal], "offset": float(h.offset)} for h in halfspaces
        ],
        "polytope_vertices": [[int(x) for x in v] for v in np.asarray(verts).reshape(-1, 3)],
        "states": [
            {"label": str(label), "point": [float(x) for x in np.asarray(pt).ravel()]}
            for label, pt in (states or [])
        ],
    }
    path = Path(path)
    try:
        path.write_text(dumps(doc) + "\n")
    except OSError as exc:
        raise OSError(f"could not write region file {path}: {exc}") from exc
    return path


def load_region(path):
    """Inverse of :func:`export_region`."""
    doc = json.loads(Path(path).read_text())
    halfspaces = [HalfSpace(tuple(h["normal"]), h["offset"]) for h in doc["halfspaces"]]
    vertices = np.array(doc["polytope_vertices"], dtype=np.int64).reshape(-1, 3)
    states = [(s["label"], tuple(s["point"])) for s in doc["states"]]
    return doc["n_qubits"], doc["meas"], halfspaces, vertices, states
