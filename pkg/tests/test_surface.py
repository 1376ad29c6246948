import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import Delaunay

from tesscurv.errors import StructuralError, UnsupportedInputError
from tesscurv.generators import platonic, prism, torus_quotient
from tesscurv.surface import (
    ClosedTessellation,
    Patch,
    RotationSystem,
    dual,
    euler_genus,
    face_trace,
    truncate,
    validate_tessellation,
)


def tetra_lists():
    # K4 drawn with vertex 0 in the middle of triangle 1, 2, 3
    return [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]


def delaunay_rotation(points):
    tri = Delaunay(points)
    g = nx.Graph()
    for simplex in tri.simplices:
        for i in range(3):
            g.add_edge(int(simplex[i]), int(simplex[(i + 1) % 3]))
    ok, emb = nx.check_planarity(g)
    assert ok
    lists = [list(reversed(list(emb.neighbors_cw_order(v)))) for v in range(len(points))]
    return RotationSystem.from_lists(lists), emb


def test_rotation_is_canonicalized():
    a = RotationSystem.from_lists([[1, 2, 3], [2, 0, 3], [3, 0, 1], [1, 0, 2]])
    b = RotationSystem.from_lists([[2, 3, 1], [0, 3, 2], [0, 1, 3], [0, 2, 1]])
    assert a.rotation(1) == (0, 3, 2)
    assert a.rotation(0) == (1, 2, 3)
    assert a == b


def test_rotation_rejects_bad_input():
    with pytest.raises(StructuralError, match="self-loop"):
        RotationSystem.from_lists([[0, 1], [0]])
    with pytest.raises(StructuralError, match="more than once"):
        RotationSystem.from_lists([[1, 1], [0]])
    with pytest.raises(StructuralError, match="asymmetric"):
        RotationSystem.from_lists([[1, 2], [0], [1]])
    with pytest.raises(StructuralError, match="disconnected"):
        RotationSystem.from_lists([[1], [0], [3], [2]])
    with pytest.raises(StructuralError, match="unknown neighbor"):
        RotationSystem.from_lists([[5]])


def test_darts_and_reverse():
    rot = RotationSystem.from_lists(tetra_lists())
    assert rot.n_darts == 12 and rot.n_edges == 6
    src, dst, rev = rot.dart_src, rot.indices, rot.dart_rev
    assert np.array_equal(src[rev], dst)
    assert np.array_equal(rev[rev], np.arange(12))
    assert rot.dart_lookup([0, 1], [3, 2]).tolist() == [rot.dart_index(0, 3), rot.dart_index(1, 2)]
    assert rot.dart_lookup([0], [0]).tolist() == [-1]


def test_tetrahedron_faces():
    t = ClosedTessellation(RotationSystem.from_lists(tetra_lists()))
    assert (t.n_vertices, t.n_edges, t.n_faces) == (4, 6, 4)
    assert sorted(t.trace.face_degree.tolist()) == [3, 3, 3, 3]
    assert euler_genus(t) == (2, 0)
    assert validate_tessellation(t).ok
    # every vertex lies on exactly d_v corners
    for v in range(4):
        assert len(t.corners(v)) == 3


def test_face_trace_partitions_darts():
    t = platonic("dodecahedron")
    tr = face_trace(t.rotation)
    seen = np.concatenate([tr.face_darts(f) for f in range(tr.n_faces)])
    assert np.array_equal(np.sort(seen), np.arange(t.rotation.n_darts))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=6, max_value=60), st.integers(min_value=0, max_value=10_000))
def test_random_planar_embeddings_are_spheres(n, seed):
    pts = np.random.default_rng(seed).random((n, 2))
    rot, emb = delaunay_rotation(pts)
    t = ClosedTessellation(rot)
    assert t.euler_characteristic == 2
    # face count agrees with an independent planar embedding traversal
    visited = set()
    faces = 0
    for u, v in emb.edges():
        if (u, v) not in visited:
            emb.traverse_face(u, v, mark_half_edges=visited)
            faces += 1
    assert faces == t.n_faces


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=6, max_value=40), st.integers(min_value=0, max_value=10_000))
def test_relabeling_preserves_face_structure(n, seed):
    rng = np.random.default_rng(seed)
    rot, _ = delaunay_rotation(rng.random((n, 2)))
    perm = rng.permutation(n)
    other = rot.relabel(perm)
    a = sorted(face_trace(rot).face_degree.tolist())
    b = sorted(face_trace(other).face_degree.tolist())
    assert a == b


def test_torus_genus_and_t2():
    t = torus_quotient("square", 4, 5)
    assert euler_genus(t) == (0, 1)
    assert validate_tessellation(t).ok
    small = torus_quotient("square", 3, 3)
    assert euler_genus(small) == (0, 1)


def test_planted_t2_violation_is_named():
    # two squares glued along two non-adjacent vertices: the 4-cycle
    # 0-1-2-3 embedded with both sides quadrilaterals on a sphere
    t = ClosedTessellation(RotationSystem.from_lists([[1, 3], [2, 0], [3, 1], [0, 2]]))
    rep = validate_tessellation(t)
    assert not rep.ok
    assert "T2" in rep.kinds()


def test_dual_swaps_counts():
    cube = platonic("cube")
    d = dual(cube)
    assert (d.n_vertices, d.n_edges, d.n_faces) == (6, 12, 8)
    assert sorted(d.degrees.tolist()) == [4] * 6
    assert set(d.trace.face_degree.tolist()) == {3}
    # face_of_vertex is a bijection
    assert sorted(d.face_of_vertex.tolist()) == list(range(8))
    with pytest.raises(UnsupportedInputError):
        dual(Patch(cube.rotation))


def test_dual_of_dual_matches_degrees():
    p = prism(7)
    dd = dual(dual(p))
    assert sorted(dd.degrees.tolist()) == sorted(p.degrees.tolist())
    assert sorted(dd.trace.face_degree.tolist()) == sorted(p.trace.face_degree.tolist())


def test_truncate_marks_boundary_and_gaps():
    t = torus_quotient("square", 6, 6)
    dist = t.rotation.bfs(0)
    patch = truncate(t.rotation, dist <= 2, center=0, radius=2)
    assert patch.n_vertices == 13
    assert patch.boundary_vertices == frozenset(np.flatnonzero(patch.rotation.bfs(patch.center) == 2).tolist())
    # distance-1 vertices keep all neighbors but touch squares leaving the ball
    assert int(patch.full_mask.sum()) == 5
    assert patch.interior_vertices.tolist() == [patch.center]
    assert int(patch.complete_face_mask.sum()) == 4
    assert patch.regular_type() == (4, 4)


def test_patch_validation():
    rot = RotationSystem.from_lists(tetra_lists())
    with pytest.raises(StructuralError):
        Patch(rot, center=9)
    with pytest.raises(StructuralError):
        Patch(rot, boundary_vertices=frozenset({7}))
    with pytest.raises(StructuralError, match="not marked as boundary"):
        Patch(rot, gaps=np.ones(rot.n_darts, dtype=bool))
