from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tesscurv.curvature import (
    HIGUCHI_GAP,
    avg_sphere_curvature,
    corner_curvature,
    corner_curvature_multiset,
    curvature_at_infinity_estimate,
    curvature_bounds_check,
    curvature_report,
    dual_face_curvature,
    gauss_bonnet,
    gauss_bonnet_check,
    vertex_curvature,
)
from tesscurv.errors import HypothesisError, NotInteriorError, UnsupportedInputError
from tesscurv.generators import (
    antiprism,
    cairo_torus,
    flat_lattice,
    genus_two,
    platonic,
    prism,
    torus_quotient,
    vertex_star,
)
from tesscurv.surface import dual

from conftest import hyperbolic, kagome, schedule


def star_phi(degrees, faces):
    return 1 - Fraction(degrees, 2) + sum(Fraction(1, k) for k in faces)


@pytest.mark.parametrize(
    "name, phi",
    [("tetrahedron", Fraction(1, 2)), ("cube", Fraction(1, 4)), ("octahedron", Fraction(1, 3)),
     ("dodecahedron", Fraction(1, 10)), ("icosahedron", Fraction(1, 6))],
)
def test_platonic_curvature_is_two_over_v(name, phi):
    rep = curvature_report(platonic(name))
    assert rep.distinct_values() == {phi}
    assert rep.total == 2


@pytest.mark.parametrize("p", [3, 5, 8, 12])
def test_prism_and_antiprism_curvature(p):
    assert curvature_report(prism(p)).distinct_values() == {Fraction(1, p)}
    assert curvature_report(antiprism(p)).distinct_values() == {Fraction(1, p)}


@pytest.mark.parametrize(
    "make",
    [lambda: platonic("cube"), lambda: prism(9), lambda: torus_quotient("square", 4, 5),
     lambda: torus_quotient("triangular", 4, 4), lambda: torus_quotient("hexagonal", 6, 4),
     genus_two, cairo_torus],
)
def test_gauss_bonnet(make):
    total, chi, ok = gauss_bonnet_check(make())
    assert ok and total == chi


def test_gauss_bonnet_needs_closed_surface():
    with pytest.raises(UnsupportedInputError):
        gauss_bonnet(hyperbolic(7, 3, 3))


def test_tori_are_flat():
    for kind in ("square", "triangular"):
        assert curvature_report(torus_quotient(kind, 4, 4)).distinct_values() == {0}
    # pentagons: degree-3 vertices carry 1/10, degree-4 vertices -1/5
    rep = curvature_report(cairo_torus())
    assert rep.distinct_values() == {Fraction(1, 10), Fraction(-1, 5)}
    assert rep.total == 0


def test_regular_ball_curvature():
    rep = curvature_report(hyperbolic(7, 3, 5))
    assert rep.distinct_values() == {Fraction(-1, 14)}
    assert rep.phi(0) == Fraction(-1, 14)
    assert vertex_curvature(hyperbolic(7, 3, 5), 0) == Fraction(-1, 14)


def test_corner_curvature_sums_to_vertex_curvature():
    t = kagome(6, 4)
    rep = curvature_report(t)
    for v in rep.covered_vertices[:20].tolist():
        corners = rep.corner_values(v)
        assert sum(c for _, c in corners) == rep.phi(v)
        f = corners[0][0]
        assert corner_curvature(t, (v, f)) == corners[0][1]


def test_boundary_vertex_has_no_curvature():
    t = hyperbolic(4, 5, 3)
    v = int(np.flatnonzero(~t.interior_mask)[0])
    with pytest.raises(NotInteriorError):
        vertex_curvature(t, v)
    with pytest.raises(NotInteriorError):
        curvature_report(t).phi(v)


def test_kagome_curvature():
    # degree 4 with two triangles and two hexagons
    assert curvature_report(kagome(6, 4)).distinct_values() == {Fraction(0)}
    # with octagons: 1 - 2 + 2/3 + 2/8
    assert curvature_report(kagome(8, 4)).distinct_values() == {Fraction(-1, 12)}


def test_higuchi_extremal_star():
    t = vertex_star([3, 7, 42])
    assert vertex_curvature(t, t.center) == 0
    t = vertex_star([3, 7, 43])
    assert vertex_curvature(t, t.center) == HIGUCHI_GAP
    assert curvature_bounds_check(curvature_report(t)) == []


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=3, max_value=50), min_size=3, max_size=7))
def test_vertex_star_curvature_formula_and_bounds(faces):
    t = vertex_star(faces)
    phi = vertex_curvature(t, t.center)
    d = len(faces)
    assert phi == star_phi(d, faces)
    assert -Fraction(d, 2) < phi <= 1 - Fraction(d, 6)
    if phi < 0:
        assert phi <= HIGUCHI_GAP
    assert curvature_bounds_check(curvature_report(t)) == []


def test_bounds_hold_on_generated_patches():
    for t in (hyperbolic(7, 3, 6), hyperbolic(3, 7, 4), kagome(8, 4), schedule("6+2r", 5), flat_lattice("hexagonal", 5)):
        assert curvature_bounds_check(curvature_report(t)) == []


@pytest.mark.parametrize("make", [lambda: platonic("icosahedron"), lambda: prism(6), genus_two, cairo_torus])
def test_dual_face_curvature_matches_vertex_curvature(make):
    t = make()
    d = dual(t)
    rep = curvature_report(t)
    face_phi = dual_face_curvature(d)
    for v in range(t.n_vertices):
        assert face_phi[d.face_of_vertex[v]] == rep.phi(v)


def test_corner_multiset():
    ms = corner_curvature_multiset(platonic("cube"))
    assert ms == {Fraction(1, 3) - Fraction(1, 2) + Fraction(1, 4): 24}


def test_sphere_averages_of_regular_ball():
    t = hyperbolic(4, 5, 6)
    # (2p/(p-2)) * Phi with Phi = 1 - 5/2 + 5/4
    for r in range(5):
        assert avg_sphere_curvature(t, r) == 4 * Fraction(-1, 4)
    with pytest.raises(NotInteriorError):
        avg_sphere_curvature(t, 6)
    with pytest.raises(HypothesisError):
        avg_sphere_curvature(kagome(6, 4), 1)


def test_curvature_at_infinity_on_schedule():
    est = curvature_at_infinity_estimate(schedule("6+2r", 5))
    # u_r strictly decreases as degrees grow outward
    assert all(a > b for a, b in zip(est.u, est.u[1:]))
    assert est.u[0] == 0
    assert est.K == 0


def test_report_rows_are_reduced():
    rows = curvature_report(hyperbolic(7, 3, 3)).rows()
    assert rows[0] == (0, 3, -1, 14)
