"""Deterministic constructors for tessellation families.

Closed surfaces (platonic solids, prisms, antiprisms, tori, a genus-two
surface) are returned as :class:`~tesscurv.surface.ClosedTessellation`.
Infinite tessellations are returned as finite balls
(:class:`~tesscurv.surface.Patch`) with vertex ids assigned center first and
then layer by layer.

Regular hyperbolic balls and the triangle/polygon family are grown
combinatorially: a disc is enlarged one face at a time across its boundary,
and a new face closes as soon as it meets boundary vertices that already
carry their full degree.  No coordinates or group actions are involved.
"""

from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import ConstructionError, HypothesisError, StructuralError, UnsupportedInputError
from .surface import (
    ClosedTessellation,
    Patch,
    RotationSystem,
    dual,
    truncate,
    validate_tessellation,
)

__all__ = [
    "PLATONIC_NAMES",
    "platonic",
    "prism",
    "antiprism",
    "cone_face",
    "connected_sum",
    "genus_two",
    "cairo_torus",
    "torus_quotient",
    "flat_lattice",
    "hyperbolic_ball",
    "kagome_family_ball",
    "schedule_triangulation",
    "parse_schedule",
    "vertex_star",
    "planar_patch",
    "FAMILIES",
    "GeneratorSpec",
    "generate",
]

PLATONIC_NAMES = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")


# ---------------------------------------------------------------------------
# embeddings from displacement vectors


def _rotation_from_vectors(n, arcs) -> RotationSystem:
    """Rotation system of a straight-line drawing.

    ``arcs`` holds ``(u, v, dx, dy)`` once per undirected edge, the vector
    pointing from ``u`` to ``v``.  Neighbors are sorted counterclockwise by
    angle; on a torus the vectors are the unwrapped displacements.
    """
    out = [[] for _ in range(n)]
    for u, v, dx, dy in arcs:
        out[u].append((math.atan2(dy, dx), v))
        out[v].append((math.atan2(-dy, -dx), u))
    return RotationSystem.from_lists([[w for _, w in sorted(row)] for row in out])


def _closed_from_points(points, edges) -> ClosedTessellation:
    arcs = [(u, v, points[v][0] - points[u][0], points[v][1] - points[u][1]) for u, v in edges]
    return ClosedTessellation(_rotation_from_vectors(len(points), arcs))


def _checked(t: ClosedTessellation, what: str) -> ClosedTessellation:
    report = validate_tessellation(t)
    if not report.ok:
        raise StructuralError(f"{what}: {report.violations[0].message}")
    return t


# ---------------------------------------------------------------------------
# spheres


def prism(p: int) -> ClosedTessellation:
    """Two ``p``-gons joined by a ring of ``p`` squares."""
    if p < 3:
        raise HypothesisError(f"prism needs p >= 3, got {p}")
    pts = [(math.cos(2 * math.pi * i / p), math.sin(2 * math.pi * i / p)) for i in range(p)]
    pts += [(3 * x, 3 * y) for x, y in pts]
    edges = [(i, (i + 1) % p) for i in range(p)]
    edges += [(p + i, p + (i + 1) % p) for i in range(p)]
    edges += [(i, p + i) for i in range(p)]
    return _closed_from_points(pts, edges)


def antiprism(p: int) -> ClosedTessellation:
    """Two ``p``-gons joined by a band of ``2p`` triangles."""
    if p < 3:
        raise HypothesisError(f"antiprism needs p >= 3, got {p}")
    pts = [(math.cos(2 * math.pi * i / p), math.sin(2 * math.pi * i / p)) for i in range(p)]
    pts += [(3 * math.cos(2 * math.pi * (i + 0.5) / p), 3 * math.sin(2 * math.pi * (i + 0.5) / p)) for i in range(p)]
    edges = [(i, (i + 1) % p) for i in range(p)]
    edges += [(p + i, p + (i + 1) % p) for i in range(p)]
    edges += [(i, p + i) for i in range(p)]
    edges += [(i, p + (i - 1) % p) for i in range(p)]
    return _closed_from_points(pts, edges)


def cone_face(t: ClosedTessellation, f: int) -> ClosedTessellation:
    """Insert a new vertex inside face ``f`` joined to all its vertices."""
    rot = t.rotation
    verts = t.trace.face_vertices(f)
    k = len(verts)
    c = rot.n_vertices
    lists = rot.to_lists()
    for i, v in enumerate(verts):
        before = verts[i - 1]
        row = lists[v]
        row.insert(row.index(before) + 1, c)
    # the trace runs clockwise around f, so the cone vertex sees it reversed
    lists.append(list(reversed(verts)))
    if len(set(verts)) != k:
        raise StructuralError(f"face {f} boundary is not a simple cycle")
    return ClosedTessellation(RotationSystem.from_lists(lists))


def _largest_face(t: ClosedTessellation) -> int:
    deg = t.trace.face_degree
    return int(np.flatnonzero(deg == deg.max())[0])


def platonic(name: str) -> ClosedTessellation:
    """One of the five platonic solids as a sphere tessellation.

    Examples
    --------
    >>> t = platonic("cube")
    >>> t.n_vertices, t.n_edges, t.n_faces
    (8, 12, 6)
    """
    if name == "tetrahedron":
        pts = [(0.0, 0.0)] + [(math.cos(2 * math.pi * i / 3), math.sin(2 * math.pi * i / 3)) for i in range(3)]
        return _closed_from_points(pts, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
    if name == "cube":
        return prism(4)
    if name == "octahedron":
        return antiprism(3)
    if name == "icosahedron":
        t = antiprism(5)
        t = cone_face(t, _largest_face(t))
        return cone_face(t, _largest_face(t))
    if name == "dodecahedron":
        return ClosedTessellation(dual(platonic("icosahedron")).rotation)
    raise UnsupportedInputError(f"unknown platonic solid {name!r}; choose from {', '.join(PLATONIC_NAMES)}")


# ---------------------------------------------------------------------------
# higher genus


def connected_sum(t1: ClosedTessellation, f1: int, t2: ClosedTessellation, f2: int) -> ClosedTessellation:
    """Glue two tessellations along faces of equal degree.

    Both faces are removed and their boundary cycles identified with
    opposite orientations, so the result is again oriented.  Vertices of
    ``t2`` are renumbered after those of ``t1``.
    """
    a = t1.trace.face_vertices(f1)
    b = t2.trace.face_vertices(f2)
    k = len(a)
    if len(b) != k:
        raise HypothesisError("glued faces must have the same degree")
    n1 = t1.n_vertices
    # a[i] <-> b[-i]
    ident = {b[(-i) % k]: a[i] for i in range(k)}
    rest = [v for v in range(t2.n_vertices) if v not in ident]
    new2 = dict(ident)
    new2.update({v: n1 + j for j, v in enumerate(rest)})
    lists1 = t1.rotation.to_lists()
    lists2 = t2.rotation.to_lists()
    out = [list(row) for row in lists1] + [None] * len(rest)
    for v in rest:
        out[new2[v]] = [new2[w] for w in lists2[v]]
    for i in range(k):
        x, y = a[i - 1], a[(i + 1) % k]
        row1 = lists1[a[i]]
        # t1 part, counterclockwise from y round to x
        j = row1.index(y)
        part1 = (row1[j:] + row1[:j])[: (row1[j:] + row1[:j]).index(x) + 1]
        bj = b[(-i) % k]
        row2 = [new2[w] for w in lists2[bj]]
        j2 = row2.index(x)
        spun = row2[j2:] + row2[:j2]
        part2 = spun[1: spun.index(y)]
        out[a[i]] = part1 + part2
    return ClosedTessellation(RotationSystem.from_lists(out))


def genus_two() -> ClosedTessellation:
    """Two 4x4 square tori glued along one square each (V=28, E=60, F=30)."""
    t = torus_quotient("square", 4, 4)
    return _checked(connected_sum(t, 0, t, 0), "genus-two surface")


def cairo_torus(m: int = 4, n: int = 4) -> ClosedTessellation:
    """Cairo pentagonal tiling on an ``m`` x ``n`` torus (both even).

    Every unit square carries a bar of two degree-3 vertices, horizontal and
    vertical in checkerboard fashion; each bar end is joined to the two
    square corners on its side.  All faces are pentagons.
    """
    if m < 2 or n < 2 or m % 2 or n % 2:
        raise HypothesisError("Cairo torus needs even m, n >= 2")
    lattice = lambda i, j: (i % m) + m * (j % n)  # noqa: E731
    base = m * n
    arcs = []
    for j in range(n):
        for i in range(m):
            e0 = base + 2 * (i + m * j)
            e1 = e0 + 1
            if (i + j) % 2 == 0:
                arcs.append((e0, e1, 0.4, 0.0))
                arcs.append((e0, lattice(i, j), -0.3, -0.5))
                arcs.append((e0, lattice(i, j + 1), -0.3, 0.5))
                arcs.append((e1, lattice(i + 1, j), 0.3, -0.5))
                arcs.append((e1, lattice(i + 1, j + 1), 0.3, 0.5))
            else:
                arcs.append((e0, e1, 0.0, 0.4))
                arcs.append((e0, lattice(i, j), -0.5, -0.3))
                arcs.append((e0, lattice(i + 1, j), 0.5, -0.3))
                arcs.append((e1, lattice(i, j + 1), -0.5, 0.3))
                arcs.append((e1, lattice(i + 1, j + 1), 0.5, 0.3))
    t = ClosedTessellation(_rotation_from_vectors(3 * m * n, arcs))
    return _checked(t, "Cairo torus")


# ---------------------------------------------------------------------------
# flat lattices

_SQRT3_2 = math.sqrt(3) / 2


def _lattice_steps(kind, i, j):
    """Neighbor offsets and drawing vectors of lattice point ``(i, j)``."""
    if kind == "square":
        return [((1, 0), (1, 0)), ((0, 1), (0, 1)), ((-1, 0), (-1, 0)), ((0, -1), (0, -1))]
    if kind == "triangular":
        steps = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
        return [(s, (s[0] + s[1] / 2, s[1] * _SQRT3_2)) for s in steps]
    if kind == "hexagonal":
        # brick-wall drawing of the honeycomb lattice
        vertical = (0, 1) if (i + j) % 2 == 0 else (0, -1)
        return [((1, 0), (1, 0)), ((-1, 0), (-1, 0)), (vertical, vertical)]
    raise UnsupportedInputError(f"unknown lattice type {kind!r}; choose square, triangular or hexagonal")


def torus_quotient(kind: str, m: int, n: int) -> ClosedTessellation:
    """Flat lattice modulo an ``m`` x ``n`` period grid.

    The hexagonal (honeycomb) lattice is drawn as a brick wall whose faces
    span three columns, so it needs even ``m >= 6`` and even ``n >= 4``.
    """
    if m < 3 or n < 3:
        raise HypothesisError(f"torus {m}x{n} is too small to stay simple; need m, n >= 3")
    if kind == "hexagonal" and (m % 2 or n % 2 or m < 6):
        raise HypothesisError("hexagonal torus needs even m >= 6 and even n >= 4")
    arcs = []
    for j in range(n):
        for i in range(m):
            u = i + m * j
            for (di, dj), (dx, dy) in _lattice_steps(kind, i, j):
                v = (i + di) % m + m * ((j + dj) % n)
                # keep one arc per edge: the forward half of the steps
                if (dj, di) > (0, 0):
                    arcs.append((u, v, dx, dy))
    t = ClosedTessellation(_rotation_from_vectors(m * n, arcs))
    return _checked(t, f"{kind} torus {m}x{n}")


def flat_lattice(kind: str, R: int) -> Patch:
    """Ball of radius ``R`` in the square, triangular or hexagonal lattice."""
    if R < 0:
        raise HypothesisError("radius must be nonnegative")
    h = R + 1
    side = 2 * h + 1
    idx = lambda i, j: (i + h) + side * (j + h)  # noqa: E731
    arcs = []
    for j in range(-h, h + 1):
        for i in range(-h, h + 1):
            for (di, dj), (dx, dy) in _lattice_steps(kind, i, j):
                if (dj, di) > (0, 0) and -h <= i + di <= h and -h <= j + dj <= h:
                    arcs.append((idx(i, j), idx(i + di, j + dj), dx, dy))
    rot = _rotation_from_vectors(side * side, arcs)
    return _ball(rot, idx(0, 0), R)


def _ball(rot: RotationSystem, center: int, R: int, gaps=None) -> Patch:
    dist = rot.bfs(center)
    keep = (dist >= 0) & (dist <= R)
    ids = np.flatnonzero(keep)
    order = ids[np.lexsort((ids, dist[ids]))]
    return truncate(rot, keep, center=center, radius=R, gaps=gaps, order=order)


# ---------------------------------------------------------------------------
# combinatorial disc growth


class _DiscGrower:
    """Grow a disc of an edge-to-edge tessellation one face at a time.

    The boundary is a cycle ``nxt``/``prv`` with the disc on its left.  The
    rotation list of a boundary vertex reads ``[nxt, interior..., prv]``,
    the missing neighbors belonging after the last entry.
    """

    def __init__(self, q: int, face_rule: Callable[[int], int], first: int):
        self.q = q
        self.face_rule = face_rule
        self.rot = [[(i + 1) % first, (i - 1) % first] for i in range(first)]
        self.nxt = [(i + 1) % first for i in range(first)]
        self.prv = [(i - 1) % first for i in range(first)]
        self.onb = [True] * first
        self.inner = [first] * first  # degree of the disc face left of v -> nxt[v]
        self.dist = [min(i, first - i) for i in range(first)]
        self.heap = [(d, v) for v, d in enumerate(self.dist)]
        heapq.heapify(self.heap)

    def add_face(self, v):
        q, rot, nxt, prv = self.q, self.rot, self.nxt, self.prv
        x = v
        steps = 0
        while len(rot[x]) >= q:
            x = prv[x]
            steps += 1
            if steps > 64 or x == v:
                raise ConstructionError(f"boundary saturated around vertex {v}")
        P = self.face_rule(self.inner[v])
        # vertices strictly after x up to v are saturated, so the first
        # unsaturated vertex after x lies beyond the edge v -> nxt[v]
        path = [x]
        u = x
        while True:
            u = nxt[u]
            path.append(u)
            if u == x or len(path) > P + 1:
                raise ConstructionError(f"face across {v}->{nxt[v]} does not close")
            if len(rot[u]) < q:
                break
        for w in path[:-1]:
            if self.inner[w] != self.inner[v]:
                raise ConstructionError(f"inconsistent face types along boundary at vertex {w}")
        y = path[-1]
        k = P - len(path)
        if k < 0:
            raise ConstructionError(f"face of degree {P} cannot close at vertex {v}")
        for w in path[1:-1]:
            self.onb[w] = False
        new = list(range(len(rot), len(rot) + k))
        chain = [x] + new + [y]
        if k == 0 and y in rot[x]:
            raise ConstructionError(f"closing edge {x}-{y} already present")
        dx, dy = self.dist[x], self.dist[y]
        for i, u in enumerate(new, start=1):
            rot.append([chain[i + 1], chain[i - 1]])
            nxt.append(chain[i + 1])
            prv.append(chain[i - 1])
            self.onb.append(True)
            self.inner.append(P)
            d = min(dx + i, dy + k + 1 - i)
            self.dist.append(d)
            heapq.heappush(self.heap, (d, u))
        rot[x].insert(0, chain[1])
        nxt[x] = chain[1]
        self.inner[x] = P
        rot[y].append(chain[-2])
        prv[y] = chain[-2]

    def grow(self, R):
        """Complete every vertex within distance ``R - 1`` of vertex 0."""
        while True:
            while self.heap and self.heap[0][0] <= R - 1:
                _, v = heapq.heappop(self.heap)
                guard = 0
                while self.onb[v]:
                    self.add_face(v)
                    guard += 1
                    if guard > 4 * self.q + 8:
                        raise ConstructionError(f"vertex {v} never closes")
            rot = self.rotation()
            true = rot.bfs(0)
            late = [v for v in range(len(self.rot)) if self.onb[v] and true[v] <= R - 1]
            if not late:
                return rot
            self.dist = true.tolist()
            self.heap = [(int(true[v]), v) for v in range(len(self.rot)) if self.onb[v]]
            heapq.heapify(self.heap)

    def rotation(self) -> RotationSystem:
        return RotationSystem.from_lists(self.rot)

    def gap_flags(self, rot: RotationSystem) -> np.ndarray:
        src = [v for v in range(len(self.rot)) if self.onb[v]]
        dst = [self.rot[v][0] for v in src]
        flags = np.zeros(rot.n_darts, dtype=bool)
        flags[rot.dart_lookup(src, dst)] = True
        return flags


def _grown_ball(grower: _DiscGrower, R: int) -> Patch:
    rot = grower.grow(R)
    return _ball(rot, 0, R, gaps=grower.gap_flags(rot))


def hyperbolic_ball(p: int, q: int, R: int) -> Patch:
    """Ball of radius ``R`` in the ``(p, q)``-regular tessellation.

    Every interior vertex has degree ``q`` and every complete face degree
    ``p``.  Flat parameters ``(3, 6)``, ``(4, 4)``, ``(6, 3)`` are accepted.

    Raises
    ------
    HypothesisError
        For spherical parameters, ``1/p + 1/q > 1/2``.
    """
    if p < 3 or q < 3:
        raise HypothesisError("p and q must be at least 3")
    if Fraction(1, p) + Fraction(1, q) > Fraction(1, 2):
        raise HypothesisError(f"({p},{q}) is spherical; use platonic, prism or antiprism")
    if R < 0:
        raise HypothesisError("radius must be nonnegative")
    return _grown_ball(_DiscGrower(q, lambda _: p, p), R)


def kagome_family_ball(polygon_degree: int, R: int) -> Patch:
    """Ball in the tessellation where two triangles and two ``p``-gons meet
    alternately at every vertex.

    ``polygon_degree = 6`` gives the Kagome lattice; larger even values give
    hyperbolic members of the family.  Interior vertices have curvature
    ``1 - 2 + 2/3 + 2/p = 2/p - 1/3`` exactly.
    """
    p = polygon_degree
    if p < 6 or p % 2:
        raise HypothesisError(f"polygon degree must be even and >= 6, got {p}")
    if R < 0:
        raise HypothesisError("radius must be nonnegative")
    return _grown_ball(_DiscGrower(4, lambda inner: p if inner == 3 else 3, 3), R)


# ---------------------------------------------------------------------------
# layered triangulations


_SCHEDULE = re.compile(r"^\s*(\d+)\s*(?:\+\s*(\d+)\s*\*?\s*r)?\s*$")


def parse_schedule(text: str) -> Callable[[int], int]:
    """Parse ``"a"`` or ``"a+br"`` into the map ``r -> a + b*r``."""
    m = _SCHEDULE.match(text)
    if not m:
        raise ValueError(f"cannot parse degree schedule {text!r}; expected 'a' or 'a+br'")
    a, b = int(m.group(1)), int(m.group(2) or 0)
    return lambda r: a + b * r


def schedule_triangulation(schedule, R: int) -> Patch:
    """Ball of radius ``R`` in a triangulation with prescribed layer degrees.

    Parameters
    ----------
    schedule : callable, sequence or str
        ``q_r``, the degree of every vertex at distance ``r`` from the
        center.  Must be nondecreasing with ``q_r >= 6``.
    R : int
        Radius.

    Returns
    -------
    Patch
        All complete faces are triangles.  Layer ``r`` is a cycle; each of
        its vertices has one or two neighbors in layer ``r - 1``.

    Raises
    ------
    ConstructionError
        When some vertex would need fewer than one outward neighbor.
    """
    if isinstance(schedule, str):
        schedule = parse_schedule(schedule)
    if callable(schedule):
        qs = [int(schedule(r)) for r in range(R + 1)]
    else:
        qs = [int(x) for x in schedule]
        if len(qs) < R + 1:
            raise HypothesisError(f"schedule has {len(qs)} entries, radius {R} needs {R + 1}")
        qs = qs[: R + 1]
    if R < 0:
        raise HypothesisError("radius must be nonnegative")
    if any(x < 6 for x in qs):
        raise HypothesisError(f"schedule entries must be >= 6, got {qs}")
    if any(b < a for a, b in zip(qs, qs[1:])):
        raise HypothesisError(f"schedule must be nondecreasing, got {qs}")
    if R == 0:
        rot = RotationSystem(np.zeros(2, dtype=np.int64), np.zeros(0, dtype=np.int64))
        return Patch(rot, center=0, radius=0, boundary_vertices=frozenset({0}))

    segments = [np.arange(1, qs[0] + 1, dtype=np.int64)]
    lengths = [np.array([qs[0]], dtype=np.int64)]
    n = qs[0]
    base = 1
    in1 = np.zeros(n, dtype=np.int64)
    in2 = np.full(n, -1, dtype=np.int64)
    for r in range(1, R + 1):
        i = np.arange(n, dtype=np.int64)
        a = 1 + (in2 >= 0)
        last = r == R
        if last:
            o = np.zeros(n, dtype=np.int64)
        else:
            o = qs[r] - 2 - a
            if np.any(o < 1):
                raise ConstructionError(f"layer {r}: degree {qs[r]} leaves no room for outward neighbors")
        deg = 2 + a + o
        off = np.zeros(n, dtype=np.int64)
        np.cumsum(deg[:-1], out=off[1:])
        flat = np.empty(int(deg.sum()), dtype=np.int64)
        flat[off] = base + (i + 1) % n
        flat[off + 1] = in1
        two = a == 2
        flat[off[two] + 2] = in2[two]
        flat[off + 1 + a] = base + (i - 1) % n
        if not last:
            m = int((o - 1).sum())
            s = np.zeros(n, dtype=np.int64)
            np.cumsum(o[:-1] - 1, out=s[1:])
            local = np.arange(int(o.sum()), dtype=np.int64) - np.repeat(np.cumsum(o) - o, o)
            nbase = base + n
            out_pos = np.repeat(off + 2 + a, o) + local
            flat[out_pos] = nbase + (np.repeat(s, o) + local) % m
            # in-neighbors of the next layer, in descending cyclic order
            owner = np.repeat(i, o)
            w = (np.repeat(s, o) + local) % m
            first = local == 0
            nin1 = np.empty(m, dtype=np.int64)
            nin2 = np.full(m, -1, dtype=np.int64)
            nin1[w[~first]] = base + owner[~first]
            nin1[w[first]] = base + owner[first]
            nin2[w[first]] = base + (owner[first] - 1) % n
        segments.append(flat)
        lengths.append(deg)
        if not last:
            base += n
            n, in1, in2 = m, nin1, nin2
    indices = np.concatenate(segments)
    counts = np.concatenate(lengths)
    indptr = np.zeros(counts.size + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    rot = RotationSystem(indptr, indices)
    outer = np.arange(base, base + n, dtype=np.int64)
    flags = np.zeros(rot.n_darts, dtype=bool)
    flags[rot.dart_lookup(outer, base + (outer - base + 1) % n)] = True
    return Patch(rot, center=0, radius=R, boundary_vertices=frozenset(outer.tolist()), gaps=flags)


# ---------------------------------------------------------------------------
# small patches


def vertex_star(face_degrees: Sequence[int]) -> Patch:
    """A single vertex surrounded by faces of the given degrees.

    The faces appear counterclockwise in the given order; only the center
    is interior.
    """
    k = len(face_degrees)
    if k < 3 or any(d < 3 for d in face_degrees):
        raise HypothesisError("a vertex star needs at least three faces of degree >= 3")
    spokes = list(range(1, k + 1))
    nxt_id = k + 1
    arcs = []  # boundary walk, counterclockwise
    extra = []
    for i, d in enumerate(face_degrees):
        mid = list(range(nxt_id, nxt_id + d - 3))
        nxt_id += d - 3
        extra.append(mid)
        arcs.extend([spokes[i]] + mid)
    n = nxt_id
    m = len(arcs)
    nxt = {arcs[j]: arcs[(j + 1) % m] for j in range(m)}
    prv = {arcs[j]: arcs[j - 1] for j in range(m)}
    lists = [spokes]
    for v in range(1, n):
        if v <= k:
            lists.append([nxt[v], 0, prv[v]])
        else:
            lists.append([nxt[v], prv[v]])
    rot = RotationSystem.from_lists(lists)
    src = list(range(1, n))
    flags = np.zeros(rot.n_darts, dtype=bool)
    flags[rot.dart_lookup(src, [nxt[v] for v in src])] = True
    return Patch(rot, center=0, radius=None, boundary_vertices=frozenset(src), gaps=flags)


def planar_patch(points, edges, center=0) -> Patch:
    """Patch from a straight-line planar drawing.

    The unbounded face is removed: its corners become gaps and its vertices
    boundary vertices.
    """
    arcs = [(u, v, points[v][0] - points[u][0], points[v][1] - points[u][1]) for u, v in edges]
    rot = _rotation_from_vectors(len(points), arcs)
    closed = ClosedTessellation(rot)
    tr = closed.trace
    pts = np.asarray(points, dtype=float)
    src, dst = rot.dart_src, rot.indices
    cross = pts[src, 0] * pts[dst, 1] - pts[dst, 0] * pts[src, 1]
    area = np.bincount(tr.face_of_dart, weights=cross, minlength=tr.n_faces)
    # faces are traced clockwise, so the outer face has positive signed area
    outer = int(np.argmax(area))
    on_outer = tr.face_of_dart == outer
    flags = on_outer.copy()
    boundary = frozenset(np.unique(src[on_outer]).tolist())
    return Patch(rot, center=center, radius=None, boundary_vertices=boundary, gaps=flags)


# ---------------------------------------------------------------------------
# uniform entry point


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters selecting one generator call."""

    family: str
    p: int | None = None
    q: int | None = None
    radius: int | None = None
    name: str | None = None
    polygon: int | None = None
    schedule: str | None = None
    lattice: str | None = None
    m: int | None = None
    n: int | None = None


FAMILIES = (
    "platonic",
    "prism",
    "antiprism",
    "flat",
    "torus",
    "hyperbolic",
    "kagome",
    "schedule",
    "genus2",
    "cairo",
    "star",
)


def _need(spec, *fields):
    missing = [f for f in fields if getattr(spec, f) is None]
    if missing:
        raise HypothesisError(f"family {spec.family!r} needs --{', --'.join(missing)}")


def generate(spec: GeneratorSpec):
    """Dispatch a :class:`GeneratorSpec` to its constructor."""
    fam = spec.family
    if fam == "platonic":
        _need(spec, "name")
        return platonic(spec.name)
    if fam in ("prism", "antiprism"):
        _need(spec, "p")
        return (prism if fam == "prism" else antiprism)(spec.p)
    if fam == "flat":
        _need(spec, "lattice", "radius")
        return flat_lattice(spec.lattice, spec.radius)
    if fam == "torus":
        _need(spec, "lattice", "m", "n")
        return torus_quotient(spec.lattice, spec.m, spec.n)
    if fam == "hyperbolic":
        _need(spec, "p", "q", "radius")
        return hyperbolic_ball(spec.p, spec.q, spec.radius)
    if fam == "kagome":
        _need(spec, "polygon", "radius")
        return kagome_family_ball(spec.polygon, spec.radius)
    if fam == "schedule":
        _need(spec, "schedule", "radius")
        return schedule_triangulation(spec.schedule, spec.radius)
    if fam == "genus2":
        return genus_two()
    if fam == "cairo":
        return cairo_torus(spec.m or 4, spec.n or 4)
    if fam == "star":
        _need(spec, "name")
        try:
            degrees = [int(x) for x in spec.name.split(",")]
        except ValueError:
            raise HypothesisError(f"star needs comma-separated face degrees, got {spec.name!r}") from None
        return vertex_star(degrees)
    raise UnsupportedInputError(f"unknown family {fam!r}")
