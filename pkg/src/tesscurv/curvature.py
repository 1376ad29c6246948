"""Exact combinatorial curvature.

For a vertex ``v`` of degree ``d_v`` the vertex curvature is

    Phi(v) = 1 - d_v / 2 + sum over faces f at v of 1 / deg(f),

the sum of the corner curvatures ``Phi_C(v, f) = 1/d_v - 1/2 + 1/deg(f)``.
All values are :class:`fractions.Fraction`.  On a patch, curvature is only
defined at interior vertices; every report carries its coverage mask.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce

import numpy as np

from .errors import HypothesisError, NotInteriorError, UnsupportedInputError
from .surface import ClosedTessellation, Corner, Tessellation, euler_genus

__all__ = [
    "HIGUCHI_GAP",
    "corner_curvature",
    "vertex_curvature",
    "CurvatureReport",
    "curvature_report",
    "gauss_bonnet",
    "gauss_bonnet_check",
    "dual_face_curvature",
    "corner_curvature_multiset",
    "BoundViolation",
    "curvature_bounds_check",
    "avg_sphere_curvature",
    "InfinityEstimate",
    "curvature_at_infinity_estimate",
]

#: Largest possible vertex curvature when all curvatures are negative.
HIGUCHI_GAP = Fraction(-1, 1806)


def _require_interior(t: Tessellation, v: int):
    if not 0 <= v < t.n_vertices:
        raise NotInteriorError(f"vertex {v} does not exist")
    if not t.interior_mask[v]:
        raise NotInteriorError(f"vertex {v} is not interior; its curvature is undefined in this patch")


def corner_curvature(t: Tessellation, corner) -> Fraction:
    """Curvature ``1/d_v - 1/2 + 1/deg(f)`` of the corner ``(v, f)``."""
    v, f = Corner(*corner)
    _require_interior(t, v)
    if f not in set(t.corner_faces(v).tolist()):
        raise HypothesisError(f"face {f} is not incident to vertex {v}")
    return Fraction(1, int(t.degrees[v])) - Fraction(1, 2) + Fraction(1, int(t.trace.face_degree[f]))


def vertex_curvature(t: Tessellation, v: int) -> Fraction:
    """Vertex curvature of ``v``.

    Examples
    --------
    >>> from tesscurv.generators import platonic
    >>> vertex_curvature(platonic("dodecahedron"), 0)
    Fraction(1, 10)
    """
    _require_interior(t, v)
    fdeg = t.trace.face_degree[t.corner_faces(v)]
    return 1 - Fraction(int(t.degrees[v]), 2) + sum((Fraction(1, int(k)) for k in fdeg), Fraction(0))


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    """Vertex curvatures of all covered (interior) vertices.

    Values are stored as integer numerators over one common denominator.

    Attributes
    ----------
    tessellation : Tessellation
    covered : ndarray of bool
        Vertices where curvature is defined.
    denominator : int
    numerators : ndarray
        ``Phi(v) * denominator``; meaningless where not covered.
    """

    tessellation: Tessellation
    covered: np.ndarray
    denominator: int
    numerators: np.ndarray

    def phi(self, v) -> Fraction:
        if not self.covered[v]:
            raise NotInteriorError(f"vertex {v} is not covered by this report")
        return Fraction(int(self.numerators[v]), self.denominator)

    @property
    def covered_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.covered)

    def values(self) -> dict:
        """``{v: Phi(v)}`` over covered vertices."""
        return {int(v): self.phi(v) for v in self.covered_vertices}

    @cached_property
    def total(self) -> Fraction:
        return Fraction(int(self.numerators[self.covered].sum()), self.denominator)

    @cached_property
    def minimum(self) -> Fraction | None:
        if not self.covered.any():
            return None
        return Fraction(int(self.numerators[self.covered].min()), self.denominator)

    @cached_property
    def maximum(self) -> Fraction | None:
        if not self.covered.any():
            return None
        return Fraction(int(self.numerators[self.covered].max()), self.denominator)

    def distinct_values(self) -> set:
        vals = np.unique(self.numerators[self.covered])
        return {Fraction(int(x), self.denominator) for x in vals}

    def sphere_sums(self, root=None) -> list:
        """Per-radius sums of Phi around ``root`` for fully covered spheres.

        Stops at the first sphere containing an uncovered vertex.
        """
        t = self.tessellation
        root = getattr(t, "center", 0) if root is None else root
        dist = t.rotation.bfs(root)
        out = []
        for r in range(int(dist.max()) + 1):
            s = dist == r
            if not self.covered[s].all():
                break
            out.append(Fraction(int(self.numerators[s].sum()), self.denominator))
        return out

    def corner_values(self, v) -> list:
        """``[(face, Phi_C(v, face)), ...]`` in counterclockwise order."""
        t = self.tessellation
        if not self.covered[v]:
            raise NotInteriorError(f"vertex {v} is not covered by this report")
        d = int(t.degrees[v])
        return [
            (int(f), Fraction(1, d) - Fraction(1, 2) + Fraction(1, int(t.trace.face_degree[f])))
            for f in t.corner_faces(v)
        ]

    def rows(self) -> list:
        """CSV rows ``(vertex, degree, numerator, denominator)``, reduced."""
        out = []
        for v in self.covered_vertices.tolist():
            fr = self.phi(v)
            out.append((v, int(self.tessellation.degrees[v]), fr.numerator, fr.denominator))
        return out


def curvature_report(t: Tessellation) -> CurvatureReport:
    """Exact curvature at every interior vertex of ``t``."""
    covered = t.interior_mask.copy()
    rot = t.rotation
    src = rot.dart_src
    dart_ok = covered[src]
    fdeg = t.trace.face_degree[t.trace.face_of_dart]
    present = np.unique(fdeg[dart_ok]).tolist()
    L = reduce(math.lcm, present, 2)
    d = rot.degrees
    if L * (int(d.max(initial=0)) + 2) < 2**62:
        inv = np.zeros(rot.n_darts, dtype=np.int64)
        inv[dart_ok] = L // fdeg[dart_ok]
        csum = np.concatenate([[0], np.cumsum(inv)])
        num = L - d * (L // 2) + csum[rot.indptr[1:]] - csum[rot.indptr[:-1]]
        num = np.where(covered, num, 0).astype(np.int64)
    else:
        # huge common denominator: fall back to Python integers
        num = np.zeros(t.n_vertices, dtype=object)
        for v in np.flatnonzero(covered).tolist():
            num[v] = L - int(d[v]) * (L // 2) + sum(L // int(k) for k in fdeg[rot.indptr[v]:rot.indptr[v + 1]])
    g = reduce(math.gcd, (int(x) for x in np.unique(num[covered])), L) if covered.any() else L
    return CurvatureReport(t, covered, L // g, num // g)


def gauss_bonnet(t: ClosedTessellation) -> Fraction:
    """Total curvature of a closed tessellation (equals ``2 - 2g``)."""
    if not isinstance(t, ClosedTessellation):
        raise UnsupportedInputError("total curvature needs a closed tessellation")
    return curvature_report(t).total


def gauss_bonnet_check(t: ClosedTessellation) -> tuple:
    """``(total curvature, Euler characteristic, equal?)``."""
    total = gauss_bonnet(t)
    chi, _ = euler_genus(t)
    return total, chi, total == chi


def dual_face_curvature(t: ClosedTessellation) -> list:
    """Face curvatures ``1 - deg(f)/2 + sum_{v in f} 1/d_v``, per face id.

    Under duality the face curvature of ``v*`` equals the vertex curvature
    of ``v``.
    """
    if not isinstance(t, ClosedTessellation):
        raise UnsupportedInputError("face curvature needs a closed tessellation")
    tr = t.trace
    d = t.degrees[t.rotation.dart_src]
    out = [Fraction(1) - Fraction(int(k), 2) for k in tr.face_degree]
    for dart, f in enumerate(tr.face_of_dart.tolist()):
        out[f] += Fraction(1, int(d[dart]))
    return out


def corner_curvature_multiset(t: Tessellation) -> Counter:
    """Multiset of corner curvatures over corners at interior vertices."""
    rot = t.rotation
    src = rot.dart_src
    fdeg = t.trace.face_degree[t.trace.face_of_dart]
    pairs = Counter(zip(rot.degrees[src][t.interior_mask[src]].tolist(), fdeg[t.interior_mask[src]].tolist()))
    out = Counter()
    for (dv, k), c in pairs.items():
        out[Fraction(1, dv) - Fraction(1, 2) + Fraction(1, k)] += c
    return out


@dataclass(frozen=True)
class BoundViolation:
    kind: str
    vertex: int | None
    value: Fraction
    bound: Fraction


def curvature_bounds_check(report: CurvatureReport) -> list:
    """Check ``-d/2 < Phi <= 1 - d/6``, ``Phi <= 3/2`` and, when every covered
    vertex is negatively curved, ``max Phi <= -1/1806``.

    Returns
    -------
    list of BoundViolation
        Empty when all bounds hold.
    """
    t = report.tessellation
    cov = report.covered
    D = report.denominator
    d = t.degrees.astype(object) if report.numerators.dtype == object else t.degrees.astype(np.int64)
    num = report.numerators
    out = []
    # compare 6*num with 6*D*(1 - d/6) = D*(6 - d), and 2*num with -D*d
    upper_bad = cov & (6 * num > D * (6 - d))
    lower_bad = cov & (2 * num < -D * d)
    abs_bad = cov & (2 * num > 3 * D)
    for v in np.flatnonzero(upper_bad).tolist():
        out.append(BoundViolation("upper", v, report.phi(v), 1 - Fraction(int(t.degrees[v]), 6)))
    for v in np.flatnonzero(lower_bad).tolist():
        out.append(BoundViolation("lower", v, report.phi(v), -Fraction(int(t.degrees[v]), 2)))
    for v in np.flatnonzero(abs_bad).tolist():
        out.append(BoundViolation("absolute", v, report.phi(v), Fraction(3, 2)))
    if cov.any() and report.maximum < 0 and report.maximum > HIGUCHI_GAP:
        v = int(np.flatnonzero(cov & (num == num[cov].max()))[0])
        out.append(BoundViolation("higuchi", v, report.maximum, HIGUCHI_GAP))
    return out


def _face_regular_degree(t: Tessellation) -> int:
    degs = t.face_degree_set()
    if len(degs) != 1:
        raise HypothesisError(f"tessellation is not face-regular (complete face degrees {sorted(degs)})")
    return degs.pop()


def avg_sphere_curvature(patch: Tessellation, r: int, report: CurvatureReport | None = None, root=None) -> Fraction:
    """Normalized sphere average ``(2p/(p-2)) * mean of Phi over S_r``.

    Raises
    ------
    HypothesisError
        If complete faces do not all have the same degree ``p``.
    NotInteriorError
        If ``S_r`` is empty or contains a non-interior vertex.
    """
    p = _face_regular_degree(patch)
    report = curvature_report(patch) if report is None else report
    root = getattr(patch, "center", 0) if root is None else root
    dist = patch.rotation.bfs(root)
    s = dist == r
    if not s.any():
        raise NotInteriorError(f"sphere of radius {r} is empty")
    if not report.covered[s].all():
        raise NotInteriorError(f"sphere of radius {r} touches the patch boundary")
    total = Fraction(int(report.numerators[s].sum()), report.denominator)
    return Fraction(2 * p, p - 2) * total / int(s.sum())


@dataclass(frozen=True)
class InfinityEstimate:
    """Finite-stage view of the curvature at infinity.

    ``u[r]`` is the largest curvature among interior vertices at distance at
    least ``r``; ``K`` is the smallest ``-Phi(v)/d_v`` over interior vertices.
    """

    u: tuple
    K: Fraction


def curvature_at_infinity_estimate(patch: Tessellation, report: CurvatureReport | None = None, root=None) -> InfinityEstimate:
    report = curvature_report(patch) if report is None else report
    cov = report.covered
    if not cov.any():
        raise NotInteriorError("patch has no interior vertex")
    root = getattr(patch, "center", 0) if root is None else root
    dist = patch.rotation.bfs(root)
    num = report.numerators
    D = report.denominator
    rmax = int(dist[cov].max())
    u = []
    for r in range(rmax + 1):
        sel = cov & (dist >= r)
        u.append(Fraction(int(num[sel].max()), D))
    d = patch.degrees
    ratios = {(int(x), int(y)) for x, y in zip(num[cov].tolist(), d[cov].tolist())}
    K = min(Fraction(-a, D * b) for a, b in ratios)
    return InfinityEstimate(tuple(u), K)
