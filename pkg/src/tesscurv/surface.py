"""Embedded-graph kernel.

A tessellation is stored as a rotation system: for every vertex the cyclic,
counterclockwise list of its neighbors.  Faces are never stored; they are
recovered by face tracing with the next-dart rule

    (u, v)  ->  (v, w),   w = successor of u in the rotation of v,

which walks every face with the face on the right-hand side.

Two concrete kinds of tessellation exist:

* :class:`ClosedTessellation` -- a finite tessellation of a closed oriented
  surface.  Every vertex and every face is complete.
* :class:`Patch` -- a finite ball cut out of a (typically infinite)
  tessellation.  Vertices whose rotation was truncated are listed as
  boundary vertices.  A traced face is *complete* when all of its vertices
  carry their full rotation, and a vertex is *interior* when it carries its
  full rotation and all faces at it are complete.  Only interior data is
  trusted by the curvature, geometry and spectral modules.

Rotation arrays are held in CSR form (``indptr``, ``indices``) so that balls
with millions of vertices stay affordable.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import StructuralError, UnsupportedInputError

__all__ = [
    "RotationSystem",
    "Face",
    "Corner",
    "FaceTrace",
    "face_trace",
    "Tessellation",
    "ClosedTessellation",
    "Patch",
    "truncate",
    "DualTessellation",
    "euler_genus",
    "Violation",
    "ValidationReport",
    "validate_tessellation",
    "dual",
]


def _segment_ranges(starts, lengths):
    """Concatenate ``range(s, s + l)`` for all pairs, vectorized."""
    lengths = np.asarray(lengths, dtype=np.int64)
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    offsets = np.cumsum(lengths) - lengths
    return np.arange(total, dtype=np.int64) - np.repeat(offsets, lengths) + np.repeat(starts, lengths)


class RotationSystem:
    """Cyclic counterclockwise neighbor orders of a connected simple graph.

    Parameters
    ----------
    indptr, indices : array_like
        CSR arrays; the rotation of vertex ``v`` is
        ``indices[indptr[v]:indptr[v + 1]]``.
    check : bool
        Validate simplicity, symmetry and connectivity.

    Notes
    -----
    Each rotation is stored starting at its smallest neighbor id, so two
    rotation systems describing the same embedding compare equal.
    """

    def __init__(self, indptr, indices, *, check=True):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        if indptr.ndim != 1 or indptr.size == 0 or indptr[0] != 0 or indptr[-1] != indices.size:
            raise StructuralError("malformed CSR rotation arrays")
        n = indptr.size - 1
        deg = np.diff(indptr)
        if np.any(deg < 0):
            raise StructuralError("malformed CSR rotation arrays")
        if indices.size and (indices.min() < 0 or indices.max() >= n):
            bad = int(np.flatnonzero((indices < 0) | (indices >= n))[0])
            u = int(np.searchsorted(indptr, bad, side="right") - 1)
            raise StructuralError(f"vertex {u} lists unknown neighbor {int(indices[bad])}")
        self.indptr = indptr
        self.indices = self._canonical(indptr, indices, deg)
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        if check:
            self._check()

    @staticmethod
    def _canonical(indptr, indices, deg):
        if indices.size == 0:
            return indices.copy()
        n = deg.size
        nonempty = deg > 0
        starts = indptr[:-1][nonempty]
        mins = np.minimum.reduceat(indices, starts)
        owner = np.repeat(np.arange(n)[nonempty], deg[nonempty])
        full_mins = np.repeat(mins, deg[nonempty])
        hits = np.flatnonzero(indices == full_mins)
        # first hit per segment (repeats are rejected later by _check)
        seg_of_hit = owner[hits]
        first = np.ones(hits.size, dtype=bool)
        first[1:] = seg_of_hit[1:] != seg_of_hit[:-1]
        shift = np.zeros(n, dtype=np.int64)
        shift[seg_of_hit[first]] = hits[first] - indptr[seg_of_hit[first]]
        pos = np.arange(indices.size, dtype=np.int64)
        local = pos - np.repeat(indptr[:-1], deg)
        new_local = (local - np.repeat(shift, deg)) % np.repeat(np.maximum(deg, 1), deg)
        out = np.empty_like(indices)
        out[np.repeat(indptr[:-1], deg) + new_local] = indices
        return out

    @classmethod
    def from_lists(cls, rotations: Sequence[Iterable[int]], *, check=True) -> "RotationSystem":
        """Build from a sequence of per-vertex neighbor lists."""
        rotations = [list(r) for r in rotations]
        lengths = np.fromiter((len(r) for r in rotations), dtype=np.int64, count=len(rotations))
        indptr = np.zeros(len(rotations) + 1, dtype=np.int64)
        np.cumsum(lengths, out=indptr[1:])
        flat = np.fromiter((w for r in rotations for w in r), dtype=np.int64, count=int(indptr[-1]))
        return cls(indptr, flat, check=check)

    def _check(self):
        n = self.n_vertices
        src = self.dart_src
        dst = self.indices
        loops = np.flatnonzero(src == dst)
        if loops.size:
            raise StructuralError(f"self-loop at vertex {int(src[loops[0]])}")
        keys = src * n + dst
        order = np.argsort(keys, kind="stable")
        sk = keys[order]
        dup = np.flatnonzero(sk[1:] == sk[:-1])
        if dup.size:
            k = int(sk[dup[0]])
            raise StructuralError(f"vertex {k // n} lists neighbor {k % n} more than once")
        rev_keys = dst * n + src
        pos = np.searchsorted(sk, rev_keys)
        pos_c = np.minimum(pos, max(sk.size - 1, 0))
        missing = np.flatnonzero((pos >= sk.size) | (sk[pos_c] != rev_keys))
        if missing.size:
            i = int(missing[0])
            raise StructuralError(
                f"asymmetric adjacency: {int(src[i])} lists {int(dst[i])} "
                f"but {int(dst[i])} does not list {int(src[i])}"
            )
        self.__dict__["dart_rev"] = order[pos]
        if n > 0:
            dist = self.bfs(0)
            if np.any(dist < 0):
                raise StructuralError(f"graph is disconnected (vertex {int(np.flatnonzero(dist < 0)[0])} unreachable from 0)")

    # -- basic accessors -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return self.indptr.size - 1

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.diff(self.indptr)
        d.setflags(write=False)
        return d

    @property
    def n_edges(self) -> int:
        return self.indices.size // 2

    @property
    def n_darts(self) -> int:
        return self.indices.size

    def degree(self, v) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def rotation(self, v) -> tuple:
        return tuple(int(w) for w in self.neighbors(v))

    def to_lists(self) -> list:
        ind = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [ind[ptr[v]:ptr[v + 1]] for v in range(self.n_vertices)]

    def edges(self) -> np.ndarray:
        """Undirected edges as an ``(E, 2)`` array with ``u < v``."""
        mask = self.dart_src < self.indices
        return np.column_stack([self.dart_src[mask], self.indices[mask]])

    def __eq__(self, other):
        if not isinstance(other, RotationSystem):
            return NotImplemented
        return np.array_equal(self.indptr, other.indptr) and np.array_equal(self.indices, other.indices)

    def __hash__(self):
        return hash((self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self):
        return f"RotationSystem(n_vertices={self.n_vertices}, n_edges={self.n_edges})"

    # -- darts -----------------------------------------------------------

    @cached_property
    def dart_src(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_vertices, dtype=np.int64), self.degrees)

    @cached_property
    def dart_rev(self) -> np.ndarray:
        n = self.n_vertices
        keys = self.dart_src * n + self.indices
        order = np.argsort(keys, kind="stable")
        pos = np.searchsorted(keys[order], self.indices * n + self.dart_src)
        return order[pos]

    def dart_lookup(self, src, dst) -> np.ndarray:
        """Vectorized dart positions for pairs ``(src[i], dst[i])``; ``-1``
        where the pair is not an edge."""
        n = self.n_vertices
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        keys = self.dart_src * n + self.indices
        order = np.argsort(keys, kind="stable")
        sk = keys[order]
        q = src * n + dst
        pos = np.searchsorted(sk, q)
        pos_c = np.minimum(pos, max(sk.size - 1, 0))
        found = (pos < sk.size) & (sk[pos_c] == q) if sk.size else np.zeros(q.shape, dtype=bool)
        return np.where(found, order[pos_c] if sk.size else -1, -1)

    def dart_index(self, u, v) -> int:
        """Position of dart ``(u, v)``; raises ``KeyError`` if absent."""
        hits = np.flatnonzero(self.neighbors(u) == v)
        if hits.size == 0:
            raise KeyError((u, v))
        return int(self.indptr[u] + hits[0])

    @cached_property
    def next_dart(self) -> np.ndarray:
        """Face-tracing successor of every dart."""
        r = self.dart_rev + 1
        dst = self.indices
        wrap = r == self.indptr[dst + 1]
        r[wrap] = self.indptr[dst[wrap]]
        return r

    # -- metric helpers --------------------------------------------------

    def bfs(self, root, restrict=None) -> np.ndarray:
        """Graph distances from ``root`` (``-1`` where unreachable).

        ``restrict`` is an optional boolean mask of vertices allowed on
        paths (the root is always allowed).
        """
        n = self.n_vertices
        dist = np.full(n, -1, dtype=np.int64)
        dist[root] = 0
        frontier = np.array([root], dtype=np.int64)
        level = 0
        while frontier.size:
            level += 1
            starts = self.indptr[frontier]
            lens = self.indptr[frontier + 1] - starts
            nb = self.indices[_segment_ranges(starts, lens)]
            nb = nb[dist[nb] < 0]
            if restrict is not None:
                nb = nb[restrict[nb]]
            nb = np.unique(nb)
            dist[nb] = level
            frontier = nb
        return dist

    def induced(self, keep) -> tuple["RotationSystem", np.ndarray]:
        """Restrict to the vertices in boolean mask ``keep``.

        Rotations keep their cyclic order.  Returns the new system and the
        array of old ids indexed by new id.
        """
        keep = np.asarray(keep, dtype=bool)
        old_ids = np.flatnonzero(keep)
        new_id = np.full(self.n_vertices, -1, dtype=np.int64)
        new_id[old_ids] = np.arange(old_ids.size)
        dart_keep = keep[self.dart_src] & keep[self.indices]
        src_new = new_id[self.dart_src[dart_keep]]
        dst_new = new_id[self.indices[dart_keep]]
        counts = np.bincount(src_new, minlength=old_ids.size)
        indptr = np.zeros(old_ids.size + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return RotationSystem(indptr, dst_new), old_ids

    def relabel(self, order) -> "RotationSystem":
        """Return the system with old vertex ``order[i]`` renamed to ``i``."""
        order = np.asarray(order, dtype=np.int64)
        new_id = np.empty_like(order)
        new_id[order] = np.arange(order.size)
        deg = self.degrees[order]
        indptr = np.zeros(order.size + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        take = _segment_ranges(self.indptr[order], deg)
        return RotationSystem(indptr, new_id[self.indices[take]], check=False)


# ---------------------------------------------------------------------------
# faces


class Corner(NamedTuple):
    vertex: int
    face: int


@dataclass(frozen=True)
class Face:
    """A traced face: its boundary darts in tracing order."""

    darts: tuple

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple:
        return tuple(u for u, _ in self.darts)


@dataclass(frozen=True, eq=False)
class FaceTrace:
    """Partition of the darts of a rotation system into face cycles.

    Faces are numbered by their smallest dart index, so the numbering is
    a deterministic function of the rotation system.
    """

    rotation: RotationSystem
    face_of_dart: np.ndarray
    face_degree: np.ndarray
    face_rep: np.ndarray

    @property
    def n_faces(self) -> int:
        return self.face_degree.size

    def face_darts(self, f) -> list:
        """Dart indices of face ``f`` in tracing order."""
        nxt = self.rotation.next_dart
        start = int(self.face_rep[f])
        out = [start]
        d = int(nxt[start])
        while d != start:
            out.append(d)
            d = int(nxt[d])
        return out

    def face(self, f) -> Face:
        src = self.rotation.dart_src
        dst = self.rotation.indices
        return Face(tuple((int(src[d]), int(dst[d])) for d in self.face_darts(f)))

    def face_vertices(self, f) -> list:
        src = self.rotation.dart_src
        return [int(src[d]) for d in self.face_darts(f)]

    def faces(self) -> list:
        return [self.face(f) for f in range(self.n_faces)]


def face_trace(rotation: RotationSystem) -> FaceTrace:
    """Trace all faces of a rotation system with the next-dart rule."""
    nxt = rotation.next_dart
    m = np.arange(rotation.n_darts, dtype=np.int64)
    p = nxt.copy()
    # pointer jumping: after k rounds m[i] is the min over 2**k successors
    span = 1
    while span < max(rotation.n_darts, 1):
        np.minimum(m, m[p], out=m)
        p = p[p]
        span *= 2
    reps, face_of_dart = np.unique(m, return_inverse=True)
    face_of_dart = face_of_dart.astype(np.int64).reshape(-1)
    degree = np.bincount(face_of_dart, minlength=reps.size).astype(np.int64)
    return FaceTrace(rotation, face_of_dart, degree, reps.astype(np.int64))


# ---------------------------------------------------------------------------
# tessellations


@dataclass(frozen=True, eq=False)
class Tessellation:
    """Common behaviour of closed tessellations and patches."""

    rotation: RotationSystem

    @cached_property
    def trace(self) -> FaceTrace:
        return face_trace(self.rotation)

    @property
    def n_vertices(self) -> int:
        return self.rotation.n_vertices

    @property
    def n_edges(self) -> int:
        return self.rotation.n_edges

    @property
    def n_faces(self) -> int:
        return self.trace.n_faces

    @property
    def degrees(self) -> np.ndarray:
        return self.rotation.degrees

    @cached_property
    def full_mask(self) -> np.ndarray:
        """Vertices whose complete rotation is present."""
        return np.ones(self.n_vertices, dtype=bool)

    @cached_property
    def gap_darts(self) -> np.ndarray:
        """Darts ``(v, w)`` whose true counterclockwise predecessor at ``v``
        is missing; face tracing into such a dart is unreliable."""
        return np.zeros(self.rotation.n_darts, dtype=bool)

    @cached_property
    def complete_face_mask(self) -> np.ndarray:
        hits = np.bincount(self.trace.face_of_dart, weights=self.gap_darts, minlength=self.n_faces)
        return hits == 0

    @cached_property
    def interior_mask(self) -> np.ndarray:
        rot = self.rotation
        bad_dart = ~self.complete_face_mask[self.trace.face_of_dart]
        bad_vertex = np.bincount(rot.dart_src, weights=bad_dart, minlength=self.n_vertices) > 0
        return self.full_mask & ~bad_vertex

    @property
    def interior_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.interior_mask)

    @property
    def complete_faces(self) -> np.ndarray:
        return np.flatnonzero(self.complete_face_mask)

    def is_interior(self, v) -> bool:
        return bool(self.interior_mask[v])

    def corner_faces(self, v) -> np.ndarray:
        """Face ids at ``v``, one per corner, in counterclockwise order."""
        rot = self.rotation
        return self.trace.face_of_dart[rot.indptr[v]:rot.indptr[v + 1]]

    def corners(self, v) -> list:
        return [Corner(int(v), int(f)) for f in self.corner_faces(v)]

    def face_degree_set(self) -> set:
        """Distinct degrees of complete faces."""
        return set(np.unique(self.trace.face_degree[self.complete_face_mask]).tolist())

    def regular_type(self):
        """``(p, q)`` if all complete faces have degree p and all interior
        vertices degree q, else ``None``."""
        fdeg = np.unique(self.trace.face_degree[self.complete_face_mask])
        vdeg = np.unique(self.degrees[self.interior_mask])
        if fdeg.size == 1 and vdeg.size == 1:
            return int(fdeg[0]), int(vdeg[0])
        return None


@dataclass(frozen=True, eq=False)
class ClosedTessellation(Tessellation):
    """Tessellation of a closed oriented surface."""

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        return euler_genus(self)[1]

    @property
    def center(self) -> int:
        return 0

    def __repr__(self):
        return f"ClosedTessellation(V={self.n_vertices}, E={self.n_edges}, F={self.n_faces})"


@dataclass(frozen=True, eq=False)
class Patch(Tessellation):
    """Finite ball of a tessellation with explicitly marked boundary.

    Parameters
    ----------
    rotation : RotationSystem
        Rotations restricted to the ball.
    center : int
        Vertex the ball is centered at.
    radius : int or None
        Combinatorial radius, when the patch is a ball.
    boundary_vertices : frozenset
        Vertices whose rotation is truncated.
    gaps : ndarray of bool, optional
        Per dart (aligned with ``rotation.indices``): true where missing
        neighbors sit immediately before this dart in the rotation.  Boundary
        vertices without any flagged dart are treated conservatively, every
        dart at them counting as a gap.

    Notes
    -----
    A traced face is complete when none of its darts is a gap dart.  Such a
    face is a genuine face of the ambient tessellation even if it passes
    through boundary vertices.
    """

    center: int = 0
    radius: int | None = None
    boundary_vertices: frozenset = field(default_factory=frozenset)
    gaps: np.ndarray | None = None

    def __post_init__(self):
        bad = [v for v in self.boundary_vertices if not 0 <= v < self.n_vertices]
        if bad:
            raise StructuralError(f"boundary lists unknown vertex {bad[0]}")
        if not 0 <= self.center < self.n_vertices:
            raise StructuralError(f"center {self.center} is not a vertex")
        if self.gaps is not None:
            gaps = np.asarray(self.gaps, dtype=bool)
            if gaps.shape != (self.rotation.n_darts,):
                raise StructuralError("gap flags must have one entry per dart")
            stray = np.flatnonzero(gaps & self.full_mask[self.rotation.dart_src])
            if stray.size:
                v = int(self.rotation.dart_src[stray[0]])
                raise StructuralError(f"vertex {v} has a gap but is not marked as boundary")
            object.__setattr__(self, "gaps", gaps)

    @cached_property
    def gap_darts(self) -> np.ndarray:
        rot = self.rotation
        src = rot.dart_src
        flagged = np.zeros(rot.n_darts, dtype=bool) if self.gaps is None else self.gaps.copy()
        explicit = np.bincount(src, weights=flagged, minlength=self.n_vertices) > 0
        conservative = ~self.full_mask & ~explicit
        flagged |= conservative[src]
        return flagged

    @cached_property
    def full_mask(self) -> np.ndarray:
        mask = np.ones(self.n_vertices, dtype=bool)
        if self.boundary_vertices:
            mask[np.fromiter(self.boundary_vertices, dtype=np.int64)] = False
        return mask

    @cached_property
    def center_distances(self) -> np.ndarray:
        return self.rotation.bfs(self.center)

    def __repr__(self):
        return (
            f"Patch(V={self.n_vertices}, center={self.center}, radius={self.radius}, "
            f"interior={int(self.interior_mask.sum())})"
        )


def truncate(rotation: RotationSystem, keep, *, center, radius=None, gaps=None, order=None) -> Patch:
    """Cut the vertices in ``keep`` out of a larger rotation system.

    Parameters
    ----------
    rotation : RotationSystem
        Ambient rotations, possibly themselves carrying gaps.
    keep : array_like of bool
        Vertices to retain; the induced graph must be connected.
    center, radius
        Recorded on the patch; ``center`` is an ambient id.
    gaps : array_like of bool, optional
        Gap flags of the ambient darts.
    order : array_like of int, optional
        Ambient ids of the kept vertices in their new numbering.

    Returns
    -------
    Patch
        Kept vertices that lose a neighbor, or already had a gap, become
        boundary vertices; the missing stretches are recorded as gaps.
    """
    keep = np.asarray(keep, dtype=bool)
    n = rotation.n_vertices
    src, dst, ptr = rotation.dart_src, rotation.indices, rotation.indptr
    amb_gaps = np.zeros(rotation.n_darts, dtype=bool) if gaps is None else np.asarray(gaps, dtype=bool)
    if order is None:
        order = np.flatnonzero(keep)
    order = np.asarray(order, dtype=np.int64)
    if not np.array_equal(np.sort(order), np.flatnonzero(keep)):
        raise StructuralError("order must enumerate exactly the kept vertices")
    new_id = np.full(n, -1, dtype=np.int64)
    new_id[order] = np.arange(order.size)

    pos = np.arange(rotation.n_darts, dtype=np.int64)
    pred = np.where(pos == ptr[src], ptr[src + 1] - 1, pos - 1)
    new_gap = amb_gaps | ~keep[dst[pred]]
    dropped = ~keep[dst]
    lost = np.bincount(src, weights=dropped | amb_gaps, minlength=n) > 0
    boundary = np.flatnonzero(keep & lost)

    d_idx = np.flatnonzero(keep[src] & keep[dst])
    s_new = new_id[src[d_idx]]
    d_idx = d_idx[np.argsort(s_new, kind="stable")]
    s_new = new_id[src[d_idx]]
    t_new = new_id[dst[d_idx]]
    indptr = np.zeros(order.size + 1, dtype=np.int64)
    np.cumsum(np.bincount(s_new, minlength=order.size), out=indptr[1:])
    rot = RotationSystem(indptr, t_new)
    flags = np.zeros(rot.n_darts, dtype=bool)
    flags[rot.dart_lookup(s_new, t_new)] = new_gap[d_idx]
    return Patch(
        rot,
        center=int(new_id[center]),
        radius=radius,
        boundary_vertices=frozenset(new_id[boundary].tolist()),
        gaps=flags,
    )


def euler_genus(t: ClosedTessellation) -> tuple:
    """Euler characteristic and genus ``(chi, g)`` of a closed tessellation."""
    if not isinstance(t, ClosedTessellation):
        raise UnsupportedInputError("Euler characteristic needs a closed tessellation")
    chi = t.n_vertices - t.n_edges + t.n_faces
    if (2 - chi) % 2:
        raise StructuralError(f"2 - chi = {2 - chi} is odd; trace is not an orientable surface")
    return chi, (2 - chi) // 2


# ---------------------------------------------------------------------------
# validation


class Violation(NamedTuple):
    kind: str
    message: str
    witnesses: tuple


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def __bool__(self):
        return self.ok


def validate_tessellation(t: Tessellation) -> ValidationReport:
    """Check T1, T2, face simplicity and face degrees on complete faces.

    Face boundaries that revisit a vertex are reported under ``"T3"``; a
    single-cycle boundary is the combinatorial stand-in for a disc face.
    """
    rot = t.rotation
    tr = t.trace
    complete = t.complete_face_mask
    src = rot.dart_src
    dst = rot.indices
    fod = tr.face_of_dart
    out = []

    for f in np.flatnonzero(complete & (tr.face_degree < 3)):
        out.append(Violation("degree", f"face {int(f)} has degree {int(tr.face_degree[f])}", (int(f),)))

    # T1: the two darts of an edge lie on two different faces
    rev = rot.dart_rev
    one_side = np.flatnonzero((src < dst) & (fod == fod[rev]) & complete[fod])
    for d in one_side:
        out.append(Violation("T1", f"edge {int(src[d])}-{int(dst[d])} lies on face {int(fod[d])} only",
                             (int(src[d]), int(dst[d]))))

    # T3 surrogate: face boundary is a simple cycle
    cf_darts = complete[fod]
    pair = np.unique(np.column_stack([fod[cf_darts], src[cf_darts]]), axis=0)
    counts = np.bincount(pair[:, 0], minlength=tr.n_faces) if pair.size else np.zeros(tr.n_faces, dtype=np.int64)
    for f in np.flatnonzero(complete & (counts != tr.face_degree)):
        out.append(Violation("T3", f"face {int(f)} boundary revisits a vertex", (int(f),)))

    # T2: two faces meet in nothing, one vertex, or one edge
    faces_at = defaultdict(set)
    for f, v in pair.tolist() if pair.size else []:
        faces_at[v].add(f)
    shared = defaultdict(set)
    for v, fs in faces_at.items():
        if len(fs) < 2:
            continue
        fs = sorted(fs)
        for i in range(len(fs)):
            for j in range(i + 1, len(fs)):
                shared[(fs[i], fs[j])].add(v)
    for (f, g), vs in sorted(shared.items()):
        if len(vs) == 1:
            continue
        ok = False
        if len(vs) == 2:
            a, b = sorted(vs)
            try:
                d = rot.dart_index(a, b)
            except KeyError:
                d = None
            if d is not None and {int(fod[d]), int(fod[rev[d]])} == {f, g}:
                ok = True
        if not ok:
            out.append(Violation("T2", f"faces {f} and {g} share vertices {sorted(vs)}", (f, g, tuple(sorted(vs)))))
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# duality


@dataclass(frozen=True, eq=False)
class DualTessellation(ClosedTessellation):
    """Dual of a closed tessellation with the correspondence maps.

    ``vertex_of_face[f]`` is the dual vertex of primal face ``f`` and
    ``face_of_vertex[v]`` is the dual face surrounding primal vertex ``v``.
    """

    primal: ClosedTessellation | None = None
    vertex_of_face: np.ndarray | None = None
    face_of_vertex: np.ndarray | None = None


def dual(t: ClosedTessellation) -> DualTessellation:
    """Dual tessellation: faces become vertices, vertices become faces."""
    if not isinstance(t, ClosedTessellation):
        raise UnsupportedInputError("dual is only defined for closed tessellations")
    rot = t.rotation
    tr = t.trace
    fod = tr.face_of_dart
    rev = rot.dart_rev
    lists = []
    for f in range(tr.n_faces):
        darts = tr.face_darts(f)
        # trace runs clockwise around the face, so reverse for ccw order
        lists.append([int(fod[rev[d]]) for d in reversed(darts)])
    drot = RotationSystem.from_lists(lists)
    result_trace = face_trace(drot)

    # primal dart with face(d) = f, face(rev d) = g, keyed by dual dart
    n_f = tr.n_faces
    keys = fod * n_f + fod[rev]
    order = np.argsort(keys, kind="stable")
    dsrc, ddst = drot.dart_src, drot.indices
    pos = np.searchsorted(keys[order], dsrc * n_f + ddst)
    primal_dart = order[pos]
    a = rot.dart_src[primal_dart]
    b = rot.indices[primal_dart]
    face_of_vertex = np.full(t.n_vertices, -1, dtype=np.int64)
    for g in range(result_trace.n_faces):
        ds = result_trace.face_darts(g)
        common = set([int(a[ds[0]]), int(b[ds[0]])])
        for d in ds[1:]:
            common &= {int(a[d]), int(b[d])}
        if len(common) != 1:
            raise StructuralError("dual face does not surround a single primal vertex")
        v = common.pop()
        if face_of_vertex[v] >= 0:
            raise StructuralError(f"primal vertex {v} surrounded by two dual faces")
        face_of_vertex[v] = g
    out = DualTessellation(drot, primal=t, vertex_of_face=np.arange(n_f), face_of_vertex=face_of_vertex)
    out.__dict__["trace"] = result_trace
    return out
