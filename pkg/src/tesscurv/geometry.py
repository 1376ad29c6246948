"""Metric structure, cut locus, volumes, boundaries and isoperimetry.

For a finite vertex set ``W`` the boundary ``dW`` counts directed edges from
``W`` to its complement and ``vol(W)`` is the sum of degrees, so that

    vol(W) = 2 #E_W + #dW,

where ``E_W`` are the edges inside ``W``.  The isoperimetric constant is
the infimum of ``#dW / vol(W)`` over finite ``W``; it is bracketed here by
sampled upper witnesses, a closed form for regular tessellations and a
curvature lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .curvature import CurvatureReport, curvature_report
from .errors import HypothesisError, NotInteriorError
from .surface import Tessellation

__all__ = [
    "MetricProfile",
    "bfs_profile",
    "CutLocus",
    "cut_locus",
    "boundary_and_volume",
    "IsoEntry",
    "IsoReport",
    "iso_ball_sweep",
    "iso_set_sweep",
    "iso_annulus_sweep",
    "ExactIso",
    "iso_regular_exact",
    "c_pq",
    "iso_lower_bound",
    "is_simply_connected",
    "random_simply_connected_set",
    "random_vertex_set",
    "derksen_check",
    "BetaDelta",
    "beta_delta_regular",
]


def _root(t, root):
    return getattr(t, "center", 0) if root is None else int(root)


# ---------------------------------------------------------------------------
# distances


@dataclass(frozen=True, eq=False)
class MetricProfile:
    """Distances from a root and the induced sphere/ball data.

    ``volumes[r]`` is ``None`` once ``B_r`` contains a vertex whose degree
    is truncated by the patch boundary.
    """

    root: int
    distances: np.ndarray
    parents: np.ndarray
    sphere_sizes: tuple
    ball_sizes: tuple
    volumes: tuple

    def sphere(self, r) -> np.ndarray:
        return np.flatnonzero(self.distances == r)

    @property
    def radius(self) -> int:
        return len(self.sphere_sizes) - 1


def bfs_profile(t: Tessellation, root=None) -> MetricProfile:
    """Exact BFS profile around ``root`` (the center by default)."""
    root = _root(t, root)
    rot = t.rotation
    dist = rot.bfs(root)
    # parent: smallest-id neighbor one step closer
    src, dst = rot.dart_src, rot.indices
    closer = dist[dst] == dist[src] - 1
    big = np.iinfo(np.int64).max
    parents = np.full(t.n_vertices, big, dtype=np.int64)
    np.minimum.at(parents, src[closer], dst[closer])
    parents[parents == big] = -1
    rmax = int(dist.max())
    sizes = np.bincount(dist[dist >= 0], minlength=rmax + 1)
    balls = np.cumsum(sizes)
    full = t.full_mask
    deg = t.degrees
    vols = []
    acc = 0
    ok = True
    for r in range(rmax + 1):
        s = dist == r
        ok = ok and bool(full[s].all())
        acc += int(deg[s].sum())
        vols.append(acc if ok else None)
    return MetricProfile(root, dist, parents, tuple(int(x) for x in sizes), tuple(int(x) for x in balls), tuple(vols))


@dataclass(frozen=True)
class CutLocus:
    """Cut-locus vertices whose status is decidable inside the patch.

    ``vertices`` are local maxima of the distance from ``root``;
    ``undecidable`` are vertices whose neighborhood is not known exactly.
    """

    root: int
    vertices: tuple
    undecidable: tuple
    decidable_radius: int | None
    distances: np.ndarray = field(repr=False, compare=False)

    def by_radius(self) -> dict:
        out = {}
        for v in self.vertices:
            out.setdefault(int(self.distances[v]), []).append(v)
        return out


def cut_locus(t: Tessellation, root=None) -> CutLocus:
    """Vertices ``v`` all of whose neighbors are at distance ``<= d(root, v)``.

    In a patch only vertices that carry their full rotation and lie closer
    to the root than every boundary vertex are decided; patch distances are
    exact there.
    """
    root = _root(t, root)
    rot = t.rotation
    dist = rot.bfs(root)
    full = t.full_mask
    if full.all():
        rho = None
        decidable = np.ones(t.n_vertices, dtype=bool)
    else:
        rho = int(dist[~full].min())
        decidable = full & (dist < rho)
    src, dst = rot.dart_src, rot.indices
    farther = np.bincount(src, weights=dist[dst] > dist[src], minlength=t.n_vertices) > 0
    cut = decidable & ~farther
    if t.n_vertices == 1:
        cut[:] = False
    return CutLocus(
        root,
        tuple(np.flatnonzero(cut).tolist()),
        tuple(np.flatnonzero(~decidable).tolist()),
        rho,
        dist,
    )


# ---------------------------------------------------------------------------
# boundary and volume


def _as_mask(t: Tessellation, W) -> np.ndarray:
    W = np.asarray(W)
    if W.dtype == bool:
        if W.shape != (t.n_vertices,):
            raise ValueError("boolean vertex mask has the wrong length")
        return W.copy()
    mask = np.zeros(t.n_vertices, dtype=bool)
    mask[W.astype(np.int64)] = True
    return mask


def boundary_and_volume(t: Tessellation, W) -> tuple:
    """``(#dW, vol(W), #E_W)`` for a vertex set of a tessellation.

    Raises
    ------
    NotInteriorError
        If ``W`` contains a vertex whose rotation is truncated.
    """
    mask = _as_mask(t, W)
    if (mask & ~t.full_mask).any():
        v = int(np.flatnonzero(mask & ~t.full_mask)[0])
        raise NotInteriorError(f"vertex {v} has an incomplete neighborhood")
    rot = t.rotation
    out = mask[rot.dart_src]
    inner = out & mask[rot.indices]
    n_inner = int(inner.sum())
    boundary = int(out.sum()) - n_inner
    vol = int(t.degrees[mask].sum())
    return boundary, vol, n_inner // 2


@dataclass(frozen=True)
class IsoEntry:
    label: str
    boundary: int
    volume: int
    internal_edges: int
    admissible: bool

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.boundary, self.volume)


@dataclass(frozen=True)
class IsoReport:
    """Sampled isoperimetric ratios.

    ``min_ratio`` is taken over admissible entries (at least one internal
    edge) and is an upper estimate of the isoperimetric constant.
    """

    entries: tuple
    exact: "ExactIso | None" = None
    lower_bound: Fraction | None = None

    @property
    def admissible(self) -> tuple:
        return tuple(e for e in self.entries if e.admissible)

    @property
    def min_ratio(self) -> Fraction:
        adm = self.admissible
        if not adm:
            raise HypothesisError("no admissible set in sweep")
        return min(e.ratio for e in adm)

    def ratios(self) -> list:
        return [e.ratio for e in self.admissible]


def iso_ball_sweep(t: Tessellation, root=None) -> IsoReport:
    """Ratios ``#dB_r / vol(B_r)`` for every ball inside the full region.

    The single-vertex ball is listed but not admissible.
    """
    prof = bfs_profile(t, root)
    full = t.full_mask
    entries = []
    for r in range(prof.radius + 1):
        ball = (prof.distances >= 0) & (prof.distances <= r)
        if not full[ball].all():
            break
        b, vol, e = boundary_and_volume(t, ball)
        if vol == 0:
            break
        entries.append(IsoEntry(f"B_{r}", b, vol, e, e >= 1))
    rep = IsoReport(tuple(entries), _maybe_exact(t))
    if not rep.admissible:
        raise HypothesisError("no admissible ball: patch needs at least two full radii")
    return rep


def iso_set_sweep(t: Tessellation, sets, labels=None) -> IsoReport:
    """Ratios for arbitrary vertex sets."""
    entries = []
    for i, W in enumerate(sets):
        b, vol, e = boundary_and_volume(t, W)
        label = labels[i] if labels is not None else f"W_{i}"
        entries.append(IsoEntry(label, b, vol, e, e >= 1))
    return IsoReport(tuple(entries), _maybe_exact(t))


def iso_annulus_sweep(t: Tessellation, root=None) -> list:
    """Isoperimetric ratios away from the root.

    For each inner radius ``r`` the minimum ratio over the annuli
    ``{v : r <= d(v) <= s}`` (all full) is returned as ``(r, ratio)``.
    Growth of these minima towards 1 signals an isoperimetric constant at
    infinity equal to 1.
    """
    prof = bfs_profile(t, root)
    d = prof.distances
    full = t.full_mask
    top = 0
    while top + 1 <= prof.radius and full[d == top + 1].all():
        top += 1
    out = []
    for r in range(1, top + 1):
        best = None
        for s in range(r, top + 1):
            W = (d >= r) & (d <= s)
            b, vol, e = boundary_and_volume(t, W)
            if e >= 1:
                ratio = Fraction(b, vol)
                best = ratio if best is None or ratio < best else best
        if best is not None:
            out.append((r, best))
    return out


# ---------------------------------------------------------------------------
# closed forms


@dataclass(frozen=True)
class ExactIso:
    """``coefficient * sqrt(radicand)`` with rational parts."""

    coefficient: Fraction
    radicand: Fraction

    @property
    def value(self) -> float:
        return float(self.coefficient) * math.sqrt(self.radicand)

    @property
    def square(self) -> Fraction:
        return self.coefficient**2 * self.radicand

    def __le__(self, other) -> bool:
        # compare with a nonnegative rational exactly via squares
        other = Fraction(other)
        return other >= 0 and self.square <= other**2

    def __ge__(self, other) -> bool:
        other = Fraction(other)
        return other <= 0 or self.square >= other**2


def _check_regular(p, q):
    if p < 3 or q < 3:
        raise HypothesisError("p and q must be at least 3")
    if Fraction(1, p) + Fraction(1, q) > Fraction(1, 2):
        raise HypothesisError(f"({p},{q}) is spherical")


def iso_regular_exact(p: int, q: int) -> ExactIso:
    """Isoperimetric constant of the ``(p, q)``-regular tessellation,

    ``(q - 2)/q * sqrt(1 - 4 / ((p - 2)(q - 2)))``.

    Examples
    --------
    >>> round(iso_regular_exact(7, 3).value, 6)
    0.149071
    """
    _check_regular(p, q)
    return ExactIso(Fraction(q - 2, q), 1 - Fraction(4, (p - 2) * (q - 2)))


def _maybe_exact(t):
    rt = t.regular_type()
    if rt is None:
        return None
    p, q = rt
    try:
        return iso_regular_exact(p, q)
    except HypothesisError:
        return None


def c_pq(p, q) -> Fraction:
    """Constant ``C_{p,q} >= 1`` entering the curvature bound on isoperimetry.

    ``p`` or ``q`` may be ``math.inf``.
    """
    if p == math.inf:
        return Fraction(1)
    p = int(p)
    if p < 3:
        raise HypothesisError("face degree bound must be at least 3")
    first = 1 + Fraction(2, p - 2)
    if q == math.inf:
        return first
    q = int(q)
    denom = (p - 2) * (q - 2) - 2
    if denom <= 0:
        raise HypothesisError(f"({p},{q}) admits no negatively curved tessellation")
    return first * (1 + Fraction(2, denom))


def iso_lower_bound(p_max, q_max, K) -> tuple:
    """``(C_{p,q}, 2 C_{p,q} K)`` for a tessellation with ``Phi < 0``.

    Examples
    --------
    >>> iso_lower_bound(7, 3, Fraction(1, 42))
    (Fraction(7, 3), Fraction(1, 9))
    """
    K = Fraction(K)
    if K <= 0:
        raise HypothesisError("the curvature bound K must be positive")
    C = c_pq(p_max, q_max)
    return C, 2 * C * K


@dataclass(frozen=True)
class BetaDelta:
    beta: float
    delta_dual: float
    residual: float


def beta_delta_regular(p: int, q: int) -> BetaDelta:
    """``beta(G) = 2/(q(1 - alpha))`` for G = (p, q) and ``delta(G*) =
    2/(p(1 + alpha*))`` for its dual; their sum is one."""
    a = iso_regular_exact(p, q).value
    a_dual = iso_regular_exact(q, p).value
    beta = 2 / (q * (1 - a))
    delta = 2 / (p * (1 + a_dual))
    return BetaDelta(beta, delta, beta + delta - 1)


# ---------------------------------------------------------------------------
# simply connected sets and the Derksen identity


def _connected(rot, mask) -> bool:
    idx = np.flatnonzero(mask)
    if idx.size <= 1:
        return True
    dist = rot.bfs(int(idx[0]), restrict=mask)
    return bool((dist[idx] >= 0).all())


def is_simply_connected(t: Tessellation, W) -> bool:
    """``W`` and its complement in the patch are both connected."""
    mask = _as_mask(t, W)
    return bool(mask.any()) and _connected(t.rotation, mask) and _connected(t.rotation, ~mask)


def random_vertex_set(t: Tessellation, size: int, rng: np.random.Generator, allowed=None) -> np.ndarray:
    """Uniform random set of ``size`` vertices from ``allowed`` (full ones)."""
    allowed = t.full_mask if allowed is None else allowed
    pool = np.flatnonzero(allowed)
    return np.sort(rng.choice(pool, size=min(size, pool.size), replace=False))


def random_simply_connected_set(t: Tessellation, size: int, rng: np.random.Generator, allowed=None) -> np.ndarray:
    """Grow a random simply connected set inside ``allowed``.

    Starting from a random allowed vertex, random frontier vertices are
    added one at a time whenever the complement stays connected.
    """
    rot = t.rotation
    allowed = t.interior_mask if allowed is None else np.asarray(allowed, dtype=bool)
    pool = np.flatnonzero(allowed)
    if pool.size == 0:
        raise NotInteriorError("no allowed vertex")
    mask = np.zeros(t.n_vertices, dtype=bool)
    start = int(rng.choice(pool))
    mask[start] = True
    members = [start]
    tried = set()
    while len(members) < size:
        frontier = sorted(
            {int(w) for v in members for w in rot.neighbors(v) if allowed[w] and not mask[w]} - tried
        )
        if not frontier:
            break
        w = frontier[int(rng.integers(len(frontier)))]
        mask[w] = True
        if _connected(rot, ~mask):
            members.append(w)
            tried.clear()
        else:
            mask[w] = False
            tried.add(w)
    return np.array(sorted(members), dtype=np.int64)


def derksen_check(t: Tessellation, W, report: CurvatureReport | None = None) -> Fraction:
    """Residual of the curvature identity for a simply connected set.

    ``sum_{v in W} Phi(v) - (1 - #dW/2 + sum_f #(f n W)/deg f)``, the sum
    running over faces meeting both ``W`` and its complement.  It vanishes
    for every finite simply connected ``W`` of a planar tessellation.

    Raises
    ------
    NotInteriorError
        If ``W`` contains a non-interior vertex.
    HypothesisError
        If ``W`` or its complement is disconnected.
    """
    mask = _as_mask(t, W)
    if (mask & ~t.interior_mask).any():
        raise NotInteriorError("set touches the patch boundary")
    if not is_simply_connected(t, mask):
        raise HypothesisError("set is not simply connected")
    report = curvature_report(t) if report is None else report
    lhs = Fraction(int(report.numerators[mask].sum()), report.denominator)
    b, _, _ = boundary_and_volume(t, mask)
    tr = t.trace
    inside = mask[t.rotation.dart_src]
    n_in = np.bincount(tr.face_of_dart, weights=inside, minlength=tr.n_faces).astype(np.int64)
    mixed = np.flatnonzero((n_in > 0) & (n_in < tr.face_degree))
    rhs = 1 - Fraction(b, 2) + sum((Fraction(int(n_in[f]), int(tr.face_degree[f])) for f in mixed), Fraction(0))
    return lhs - rhs
