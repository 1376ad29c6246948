import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tesscurv.curvature import curvature_report
from tesscurv.errors import HypothesisError, NotInteriorError
from tesscurv.generators import flat_lattice, torus_quotient
from tesscurv.geometry import (
    beta_delta_regular,
    bfs_profile,
    boundary_and_volume,
    c_pq,
    cut_locus,
    derksen_check,
    is_simply_connected,
    iso_annulus_sweep,
    iso_ball_sweep,
    iso_lower_bound,
    iso_regular_exact,
    iso_set_sweep,
    random_simply_connected_set,
    random_vertex_set,
)

from conftest import hyperbolic, kagome, schedule

GRID = [(p, q) for p in range(3, 9) for q in range(3, 9) if Fraction(1, p) + Fraction(1, q) <= Fraction(1, 2)]


def as_graph(t):
    g = nx.Graph()
    g.add_nodes_from(range(t.n_vertices))
    g.add_edges_from(zip(t.rotation.dart_src.tolist(), t.rotation.indices.tolist()))
    return g


def test_profile_matches_networkx():
    t = hyperbolic(4, 5, 6)
    prof = bfs_profile(t)
    lengths = nx.single_source_shortest_path_length(as_graph(t), 0)
    assert all(prof.distances[v] == d for v, d in lengths.items())
    assert prof.ball_sizes[2] == 1 + 5 + 15
    # parents are one step closer
    for v in range(1, t.n_vertices):
        assert prof.distances[prof.parents[v]] == prof.distances[v] - 1
    assert prof.volumes[0] == 5 and prof.volumes[-1] is None


@pytest.mark.parametrize("pq", GRID)
def test_nonpositively_curved_balls_have_no_cut_locus(pq):
    t = hyperbolic(*pq, 5)
    loc = cut_locus(t)
    assert loc.vertices == ()
    assert loc.decidable_radius == 5


def test_kagome_cut_locus_witnesses():
    loc = cut_locus(kagome(6, 5))
    assert list(loc.by_radius()) == [3]
    assert len(loc.by_radius()[3]) == 2
    loc8 = cut_locus(kagome(8, 5))
    assert list(loc8.by_radius()) == [4]


def test_closed_surface_cut_locus_is_decided_everywhere():
    loc = cut_locus(torus_quotient("square", 4, 4))
    assert loc.undecidable == () and loc.decidable_radius is None
    # antipodal point of the 4x4 torus
    assert loc.vertices == (10,)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=60), st.integers(min_value=0, max_value=2**32 - 1))
def test_volume_identity_on_random_sets(size, seed):
    t = hyperbolic(7, 3, 8)
    W = random_vertex_set(t, size, np.random.default_rng(seed))
    b, vol, e = boundary_and_volume(t, W)
    assert vol == 2 * e + b
    g = as_graph(t)
    assert b == nx.cut_size(g, W.tolist())
    assert e == g.subgraph(W.tolist()).number_of_edges()


def test_boundary_needs_full_vertices():
    t = hyperbolic(7, 3, 4)
    with pytest.raises(NotInteriorError):
        boundary_and_volume(t, np.arange(t.n_vertices))


@pytest.mark.parametrize("make", [lambda: hyperbolic(7, 3, 8), lambda: kagome(6, 5), lambda: schedule("6+2r", 5),
                                  lambda: hyperbolic(4, 5, 6)])
def test_derksen_identity_on_random_simply_connected_sets(make):
    t = make()
    rep = curvature_report(t)
    rng = np.random.default_rng(7)
    for _ in range(50):
        W = random_simply_connected_set(t, int(rng.integers(1, 30)), rng)
        assert is_simply_connected(t, W)
        assert derksen_check(t, W, rep) == 0


def test_derksen_rejects_annulus():
    t = hyperbolic(7, 3, 8)
    d = bfs_profile(t).distances
    with pytest.raises(HypothesisError):
        derksen_check(t, (d >= 1) & (d <= 2))


def test_iso_exact_values():
    e = iso_regular_exact(7, 3)
    assert (e.coefficient, e.radicand) == (Fraction(1, 3), Fraction(1, 5))
    assert math.isclose(e.value, math.sqrt(1 / 5) / 3)
    # the curvature lower bound 2 C K = 1/9 sits below the exact constant
    C, lower = iso_lower_bound(7, 3, Fraction(1, 42))
    assert lower == Fraction(1, 9)
    assert e >= lower
    assert iso_regular_exact(4, 4).square == 0
    with pytest.raises(HypothesisError):
        iso_regular_exact(3, 5)


def test_c_pq_values():
    assert c_pq(7, 3) == Fraction(7, 3)
    assert c_pq(4, 5) == 3
    assert c_pq(math.inf, 3) == 1
    assert c_pq(5, math.inf) == Fraction(5, 3)
    with pytest.raises(HypothesisError):
        c_pq(3, 4)
    with pytest.raises(HypothesisError):
        iso_lower_bound(7, 3, 0)


@pytest.mark.parametrize("pq", [pq for pq in GRID if pq not in ((4, 4), (3, 6), (6, 3))])
def test_beta_delta_duality(pq):
    assert abs(beta_delta_regular(*pq).residual) < 1e-12


def test_ball_ratios_stay_above_exact_constant():
    for p, q in ((7, 3), (4, 5), (3, 7)):
        rep = iso_ball_sweep(hyperbolic(p, q, 6))
        assert rep.exact is not None
        assert all(rep.exact <= r for r in rep.ratios())
        assert rep.entries[0].admissible is False


def test_random_sets_stay_above_exact_constant():
    t = hyperbolic(7, 3, 8)
    rng = np.random.default_rng(3)
    sets = [random_simply_connected_set(t, int(rng.integers(2, 60)), rng) for _ in range(30)]
    rep = iso_set_sweep(t, sets)
    assert all(rep.exact <= r for r in rep.ratios())
    assert rep.min_ratio >= Fraction(1, 9)


def test_flat_ball_ratios_decay():
    rep = iso_ball_sweep(flat_lattice("square", 12))
    r = [float(x) for x in rep.ratios()]
    assert all(a > b for a, b in zip(r, r[1:]))


def test_annulus_minima_increase_on_schedule():
    rows = iso_annulus_sweep(schedule("6+4r", 5))
    vals = [v for _, v in rows]
    assert vals == sorted(vals)
    assert all(v < 1 for v in vals)
