import math
from fractions import Fraction

import pytest
import sympy

from tesscurv.errors import HypothesisError
from tesscurv.generators import flat_lattice, hyperbolic_ball
from tesscurv.geometry import bfs_profile
from tesscurv.growth import (
    ball_bounds_check,
    comparison_check,
    growth_rate,
    poly_eval,
    quadratic_growth_constant,
    recursion_predict,
    recursion_spec,
    salem_polynomial,
    salem_root,
)

from conftest import hyperbolic, kagome, schedule

HYPERBOLIC = [(7, 3), (4, 5), (3, 7), (5, 4), (8, 3), (6, 4), (5, 5), (9, 3)]


def test_recursion_spec():
    assert recursion_spec(4) == recursion_spec(4).__class__(4, 1, (Fraction(2),))
    s = recursion_spec(7)
    assert s.N == 5
    assert s.b == (Fraction(4, 5), Fraction(4, 5), Fraction(-6, 5), Fraction(4, 5), Fraction(4, 5))
    assert recursion_spec(8).N == 3
    with pytest.raises(HypothesisError):
        recursion_spec(2)


@pytest.mark.parametrize("pq", [(4, 5), (7, 3), (6, 3), (3, 7), (5, 4), (8, 3), (4, 4), (3, 6)])
def test_recursion_reproduces_sphere_sizes(pq):
    t = hyperbolic(*pq, 8)
    table = recursion_predict(t)
    assert table.ok
    assert len(table.checked_rows) >= 4
    seq = table.predicted_sequence()
    assert seq[: len(table.checked_rows) + 2] == list(table.sphere_sizes[: len(table.checked_rows) + 2])


def test_recursion_on_variable_degree_triangulation():
    table = recursion_predict(schedule("6+2r", 5))
    assert table.ok
    assert table.spec.N == 1


def test_recursion_needs_face_regular_patch():
    with pytest.raises(HypothesisError):
        recursion_predict(kagome(6, 4))


def test_recursion_refuses_nonempty_cut_locus():
    # square faces only, but the positive curvature of the cube closes up spheres
    from tesscurv.generators import platonic
    from tesscurv.surface import truncate

    cube = platonic("cube")
    patch = truncate(cube.rotation, cube.rotation.bfs(0) <= 3, center=0, radius=3)
    with pytest.raises(HypothesisError):
        recursion_predict(patch)


@pytest.mark.parametrize("pq", HYPERBOLIC)
def test_salem_root_matches_sympy(pq):
    coeffs = salem_polynomial(*pq)
    x = sympy.Symbol("x")
    roots = sympy.Poly(coeffs, x).real_roots()
    largest = max(float(r) for r in roots)
    root = salem_root(coeffs)
    assert root.certified and not root.degenerate
    assert abs(root.value - largest) < 1e-12
    # palindromic: 1/x is also a root
    assert abs(poly_eval(coeffs, 1 / root.value)) < 1e-9


def test_known_salem_values():
    golden_sq = (3 + math.sqrt(5)) / 2
    assert abs(salem_root(salem_polynomial(4, 5)).value - golden_sq) < 1e-12
    assert abs(salem_root(salem_polynomial(3, 7)).value - golden_sq) < 1e-12
    # Lehmer-type root for the heptagonal tiling
    assert abs(salem_root(salem_polynomial(7, 3)).value - 1.5560301913224066) < 1e-12


def test_flat_parameters_are_degenerate():
    for pq in ((4, 4), (6, 3), (3, 6)):
        assert salem_root(salem_polynomial(*pq)).degenerate
    with pytest.raises(HypothesisError):
        salem_polynomial(5, 3)
    with pytest.raises(HypothesisError):
        salem_root([1, 1])


@pytest.mark.parametrize("pq", HYPERBOLIC)
def test_sphere_sizes_satisfy_salem_recurrence(pq):
    # the polynomial annihilates the sphere sequence from radius 1 on
    c = salem_polynomial(*pq)
    S = bfs_profile(hyperbolic(*pq, 7)).sphere_sizes
    for r in range(1, len(S) - len(c) + 1):
        assert sum(ci * S[r + i] for i, ci in enumerate(c)) == 0


def test_growth_rate_approaches_log_root():
    g = growth_rate(hyperbolic(4, 5, 9))
    assert abs(g.log_root - math.log((3 + math.sqrt(5)) / 2)) < 1e-12
    # finite-radius estimate approaches from above
    assert g.last_sphere_rate > g.log_root
    assert g.relative_error < 0.12
    with pytest.raises(HypothesisError):
        growth_rate(hyperbolic(4, 5, 3))


def test_comparison_regular():
    rep = comparison_check(hyperbolic(4, 5, 7), hyperbolic(4, 6, 7))
    assert rep.differences[:7] == (0, 1, 9, 50, 231, 979, 3960)
    assert rep.ok


def test_comparison_needs_same_face_degree():
    with pytest.raises(HypothesisError):
        comparison_check(hyperbolic(4, 5, 5), hyperbolic(5, 4, 5))


def test_ball_bounds():
    rows = ball_bounds_check(hyperbolic(7, 3, 8))
    assert all(r.lower_ok and r.tree_ok for r in rows)
    assert all(r.lower is not None for r in rows)
    # the literal (q-1)^r bound is already exceeded at radius 1: 4 > 2
    first = next(r for r in rows if r.radius == 1)
    assert first.ball == 4 and first.upper_literal == 2 and not first.literal_ok


def test_ball_bounds_tree_is_sharp_for_trees_only():
    rows = ball_bounds_check(hyperbolic(3, 7, 5))
    assert all(r.tree_ok for r in rows)
    assert rows[1].ball == rows[1].upper_tree  # B_1 is a star


def test_flat_quadratic_growth():
    c = quadratic_growth_constant(flat_lattice("square", 10))
    # ball sizes 2r^2 + 2r + 1
    assert c[-1] == pytest.approx((2 * 100 + 20 + 1) / 100)
    assert all(a > b for a, b in zip(c, c[1:]))


def test_large_regular_ball_matches_recurrence():
    t = hyperbolic_ball(7, 3, 12)
    S = bfs_profile(t).sphere_sizes
    assert S[-1] == 654
