"""Acceptance suite: one test per criterion, at the stated tolerances.

Each test records a one-line verdict that is printed in the
"acceptance criteria" section of the pytest summary.
"""

import math
import os
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE, hyperbolic, kagome, schedule
from tesscurv.corpus import build_corpus, shipped_corpus_dir
from tesscurv.curvature import HIGUCHI_GAP, curvature_bounds_check, curvature_report, gauss_bonnet, vertex_curvature
from tesscurv.exchange import load
from tesscurv.generators import antiprism, flat_lattice, genus_two, platonic, prism, torus_quotient, vertex_star
from tesscurv.geometry import (
    beta_delta_regular,
    bfs_profile,
    boundary_and_volume,
    cut_locus,
    derksen_check,
    iso_lower_bound,
    iso_regular_exact,
    random_simply_connected_set,
    random_vertex_set,
)
from tesscurv.growth import comparison_check, growth_rate, recursion_predict, salem_polynomial, salem_root
from tesscurv.report import analyze, to_json
from tesscurv.spectral import (
    compact_eigenfunction_search,
    dirichlet_lambda0,
    eigen_degree_pairing,
    lambda0_bounds_report,
    polar_ranks,
    verify_certificate,
)

SEED = 20240611
GRID = [(p, q) for p in range(3, 9) for q in range(3, 9) if Fraction(1, p) + Fraction(1, q) <= Fraction(1, 2)]


def record(n, ok, detail):
    ACCEPTANCE[n] = (bool(ok), detail)
    assert ok, f"criterion {n}: {detail}"


@pytest.fixture(scope="module")
def fixtures():
    d = shipped_corpus_dir()
    return {f[:-5]: load(os.path.join(d, f)) for f in sorted(os.listdir(d)) if f.endswith(".tess")}


def test_c01_gauss_bonnet():
    cases = [(platonic(n), 2) for n in ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")]
    cases += [(make(p), 2) for p in range(3, 13) for make in (prism, antiprism)]
    cases += [(torus_quotient("square", 4, 5), 0), (torus_quotient("triangular", 4, 4), 0),
              (torus_quotient("hexagonal", 6, 4), 0), (genus_two(), -2)]
    bad = [(t, chi) for t, chi in cases if gauss_bonnet(t) != chi]
    record(1, not bad, f"{len(cases)} closed surfaces, exact totals 2/0/-2, {len(bad)} mismatches")


def test_c02_prism_curvature():
    bad = []
    for p in range(3, 13):
        for t in (prism(p), antiprism(p)):
            if curvature_report(t).distinct_values() != {Fraction(1, p)}:
                bad.append(p)
    record(2, not bad, f"prisms and antiprisms p=3..12 all vertices Phi=1/p, mismatches {bad}")


def test_c03_higuchi_gap(fixtures):
    star = vertex_star([3, 7, 43])
    phi = vertex_curvature(star, star.center)
    negative = []
    worst = None
    for name, t in fixtures.items():
        rep = curvature_report(t)
        if rep.covered.any() and rep.maximum < 0:
            negative.append(name)
            worst = rep.maximum if worst is None else max(worst, rep.maximum)
    ok = phi == Fraction(-1, 1806) and worst is not None and worst <= HIGUCHI_GAP
    record(3, ok, f"(3,7,43) Phi={phi}; {len(negative)} all-negative fixtures, largest max Phi={worst}")


def test_c04_curvature_bounds(fixtures):
    violations = 0
    checked = 0
    for t in fixtures.values():
        rep = curvature_report(t)
        checked += int(rep.covered.sum())
        violations += sum(1 for v in curvature_bounds_check(rep) if v.kind != "higuchi")
    record(4, violations == 0, f"{checked} interior vertices over {len(fixtures)} fixtures, {violations} violations")


def test_c05_cut_locus():
    nonempty = [pq for pq in GRID if cut_locus(hyperbolic(*pq, 5)).vertices]
    k6 = cut_locus(kagome(6, 5)).by_radius()
    k8 = cut_locus(kagome(8, 5)).by_radius()
    ok = not nonempty and 3 in k6 and k8 and max(k8) <= 8
    record(5, ok, f"{len(GRID)} regular balls with empty cut locus (nonempty: {nonempty}); "
                  f"kagome-6 witnesses at radii {sorted(k6)}, kagome-8 at radii {sorted(k8)}")


def test_c06_growth_recursion():
    rows = []
    ok = True
    for pq, R in (((4, 5), 10), ((3, 7), 10), ((7, 3), 12), ((6, 3), 12)):
        table = recursion_predict(hyperbolic(*pq, R))
        ok &= table.ok and table.interior_radius >= 8
        rows.append(f"{pq} ok={table.ok} r<={table.interior_radius}")
    seq = recursion_predict(hyperbolic(4, 5, 10)).predicted_sequence()[:6]
    ok &= seq == [1, 5, 15, 40, 105, 275]
    record(6, ok, "; ".join(rows) + f"; (4,5) predicts {seq}")


def test_c07_salem_roots():
    target = (3 + math.sqrt(5)) / 2
    x37 = salem_root(salem_polynomial(3, 7))
    x45 = salem_root(salem_polynomial(4, 5))
    roots_ok = abs(x37.value - target) < 1e-10 and abs(x45.value - target) < 1e-10 and x37.certified and x45.certified
    rates = {pq: growth_rate(hyperbolic(*pq, 12)) for pq in ((4, 5), (3, 7))}
    rates_ok = all(g.relative_error <= 0.05 for g in rates.values())
    detail = "; ".join(
        f"{pq} (1/12) log #S_12={g.last_sphere_rate:.4f} vs log x={g.log_root:.4f} ({100 * g.relative_error:.2f}%)"
        for pq, g in rates.items()
    )
    record(7, roots_ok and rates_ok, f"roots {x37.value:.12f}, {x45.value:.12f} ok={roots_ok}; {detail}")


def test_c08_comparison():
    a = comparison_check(hyperbolic(4, 5, 8), hyperbolic(4, 6, 8))
    b = comparison_check(hyperbolic(6, 3, 9), hyperbolic(6, 4, 8))
    record(8, a.ok and b.ok, f"(4,5)/(4,6) differences {a.differences}; (6,3)/(6,4) differences {b.differences}")


def test_c09_isoperimetry(fixtures):
    rng = np.random.default_rng(SEED)
    vol_bad = 0
    vol_sets = 0
    derksen_bad = 0
    derksen_sets = 0
    for name, t in fixtures.items():
        if t.full_mask.sum() < 2:
            continue
        for _ in range(100):
            W = random_vertex_set(t, int(rng.integers(1, 40)), rng)
            b, vol, e = boundary_and_volume(t, W)
            vol_bad += vol != 2 * e + b
            vol_sets += 1
        if name.startswith("hyperbolic"):
            rep = curvature_report(t)
            for _ in range(50):
                W = random_simply_connected_set(t, int(rng.integers(1, 30)), rng)
                derksen_bad += derksen_check(t, W, rep) != 0
                derksen_sets += 1
    _, lower = iso_lower_bound(7, 3, Fraction(1, 42))
    exact = iso_regular_exact(7, 3)
    iso_ok = lower == Fraction(1, 9) and exact.coefficient == Fraction(1, 3) and exact.radicand == Fraction(1, 5) and exact >= lower
    worst = max(abs(beta_delta_regular(p, q).residual) for p, q in GRID if (p - 2) * (q - 2) > 4)
    ok = vol_bad == 0 and derksen_bad == 0 and iso_ok and worst < 1e-12 and derksen_sets > 0
    record(9, ok, f"vol identity {vol_sets} sets ({vol_bad} bad); Derksen {derksen_sets} sets ({derksen_bad} nonzero); "
                  f"1/9 <= (1/3)sqrt(1/5) {iso_ok}; beta/delta residual {worst:.1e}")


def test_c10_spectral_lower_bounds():
    iso73 = 3 * (1 - math.sqrt(44 / 45))
    r73 = lambda0_bounds_report(hyperbolic(7, 3, 8))
    lam73 = r73.dirichlet[6]
    r45 = lambda0_bounds_report(hyperbolic(4, 5, 8))
    lam45 = r45.dirichlet[6]
    flat = dirichlet_lambda0(flat_lattice("square", 12))
    fvals = [flat[r] for r in sorted(flat)]
    flat_ok = all(b < a for a, b in zip(fvals, fvals[1:])) and fvals[-1] < 0.1 * fvals[0]
    ok = (lam73 >= iso73 and lam73 >= 1 / 294 and r73.ok and lam45 >= 0.30959 and r45.ok and flat_ok)
    record(10, ok, f"(7,3) lambda0(B_6)={lam73:.5f} >= {iso73:.5f}, 1/294; (4,5) lambda0(B_6)={lam45:.5f} >= 0.30959; "
                   f"monotone {r73.monotone and r45.monotone}; flat {fvals[0]:.3f} -> {fvals[-1]:.4f}")


def test_c11_eigenvalue_degree_pairing():
    table = eigen_degree_pairing(schedule("6+4r", 6), top=10)
    worst = max(abs(r.ratio - 1) * math.sqrt(r.degree) for r in table.rows)
    record(11, table.ok and len(table.rows) == 10,
           f"top-10 on a {table.region_size}-vertex region, max |lambda/d - 1| sqrt(d) = {worst:.3f} <= 3")


def test_c12_compact_eigenfunctions():
    k = kagome(6, 5)
    certs = compact_eigenfunction_search(k, 3)
    cert = certs[0] if certs else None
    cert_ok = cert is not None and cert.eigenvalue == 6 and len(cert.support) == 6 and verify_certificate(k, cert)
    none73 = compact_eigenfunction_search(hyperbolic(7, 3, 5), 3) == []
    p73 = polar_ranks(hyperbolic(7, 3, 8))
    pk = polar_ranks(k)
    r_support = int(max(bfs_profile(k).distances[list(cert.support)])) if cert else None
    consistent = cert is not None and pk.first_deficient() is not None and pk.first_deficient() <= r_support
    ok = cert_ok and none73 and p73.all_injective and not pk.all_injective and consistent
    record(12, ok, f"kagome certificate lambda={cert.eigenvalue if cert else None} support {len(cert.support) if cert else 0} "
                   f"within B_{r_support}; (7,3) none in B_3 {none73}; (7,3) E_r injective {p73.all_injective}; "
                   f"kagome first deficient E_{pk.first_deficient()}")


def test_c13_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    build_corpus(a)
    build_corpus(b)
    shipped = Path(shipped_corpus_dir())
    names = sorted(p.name for p in a.iterdir())
    same = all((a / f).read_bytes() == (b / f).read_bytes() == (shipped / f).read_bytes() for f in names)
    sections = ("curvature", "geometry", "growth", "spectrum")
    reports_same = True
    for f in names:
        if not f.endswith(".tess"):
            continue
        t = load(a / f)
        one = to_json(analyze(t, sections, seed=SEED, tol=1e-9, source={"input": f}))
        two = to_json(analyze(load(b / f), sections, seed=SEED, tol=1e-9, source={"input": f}))
        reports_same &= one == two
    record(13, same and reports_same, f"{len(names)} corpus files byte-identical across two builds and the shipped copy "
                                      f"{same}; full reports identical {reports_same}")
