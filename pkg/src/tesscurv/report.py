"""Analysis bundles: every check as a tagged row with a status.

A row is a dict with keys ``section``, ``tag``, ``claim``, ``value`` and
``status`` (``pass``, ``fail`` or ``inapplicable``).  Tags name the
statement a row instantiates (``GB``, ``HIGUCHI``, ``RECUR`` and so on).
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

import numpy as np

from . import __version__
from .curvature import (
    HIGUCHI_GAP,
    curvature_at_infinity_estimate,
    curvature_bounds_check,
    curvature_report,
    gauss_bonnet_check,
)
from .errors import HypothesisError, NotInteriorError, TessError
from .geometry import (
    boundary_and_volume,
    cut_locus,
    derksen_check,
    iso_ball_sweep,
    iso_lower_bound,
    iso_regular_exact,
    random_simply_connected_set,
    random_vertex_set,
)
from .growth import ball_bounds_check, growth_rate, recursion_predict, salem_polynomial, salem_root
from .spectral import (
    _full_radius,
    compact_eigenfunction_search,
    eigen_degree_pairing,
    lambda0_bounds_report,
    laplacian,
    polar_ranks,
    sym_eigs,
)
from .surface import ClosedTessellation, Tessellation, validate_tessellation

__all__ = ["SECTIONS", "analyze", "failures", "to_json", "to_csv"]

SECTIONS = ("curvature", "geometry", "growth", "spectrum")

# keep reports small enough to stay fast
_SPECTRAL_LIMIT = 150_000
_PAIRING_LIMIT = 20_000


def _num(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if not math.isfinite(x) else float(f"{x:.12g}")
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (list, tuple)):
        return [_num(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    return x


def _row(section, tag, claim, value, ok):
    status = "inapplicable" if ok is None else ("pass" if ok else "fail")
    return {"section": section, "tag": tag, "claim": claim, "value": _num(value), "status": status}


def _nonpositive_corners(t, rep) -> bool:
    """Every corner at an interior vertex has curvature at most zero."""
    if not rep.covered.any():
        return False
    rot = t.rotation
    src = rot.dart_src
    sel = rep.covered[src]
    d = t.degrees[src][sel].astype(np.int64)
    k = t.trace.face_degree[t.trace.face_of_dart][sel].astype(np.int64)
    # 1/d - 1/2 + 1/k <= 0  <=>  2k + 2d <= d k
    return bool(np.all(2 * k + 2 * d <= d * k))


def _curvature_rows(t, rep):
    s = "curvature"
    rows = []
    val = validate_tessellation(t)
    rows.append(_row(s, "STRUCTURE", "complete faces satisfy T1, T2 and simple boundaries",
                     sorted(f"{v.kind}: {v.message}" for v in val.violations)[:20], val.ok))
    if isinstance(t, ClosedTessellation):
        total, chi, ok = gauss_bonnet_check(t)
        rows.append(_row(s, "GB", "sum of vertex curvatures equals the Euler characteristic",
                         {"total": total, "chi": chi}, ok))
    else:
        rows.append(_row(s, "GB", "sum of vertex curvatures equals the Euler characteristic", None, None))
    if not rep.covered.any():
        rows.append(_row(s, "CURV-BOUNDS", "-d/2 <= Phi <= 1 - d/6 at interior vertices", None, None))
        rows.append(_row(s, "HIGUCHI", "negative curvature forces Phi <= -1/1806", None, None))
        return rows
    viol = curvature_bounds_check(rep)
    basic = [v for v in viol if v.kind != "higuchi"]
    rows.append(_row(s, "CURV-BOUNDS", "-d/2 <= Phi <= 1 - d/6 at interior vertices",
                     {"violations": len(basic), "min": rep.minimum, "max": rep.maximum}, not basic))
    if rep.maximum < 0:
        rows.append(_row(s, "HIGUCHI", "negative curvature forces Phi <= -1/1806",
                         {"max": rep.maximum, "gap": HIGUCHI_GAP}, rep.maximum <= HIGUCHI_GAP))
    else:
        rows.append(_row(s, "HIGUCHI", "negative curvature forces Phi <= -1/1806", {"max": rep.maximum}, None))
    return rows


def _geometry_rows(t, rep, rng, n_sets):
    s = "geometry"
    rows = []
    closed = isinstance(t, ClosedTessellation)
    if closed or not rep.covered.any():
        for tag in ("CUT-LOCUS", "ISO-EXACT", "ISO-LOWER", "DERKSEN"):
            rows.append(_row(s, tag, "infinite planar statement", None, None))
    else:
        cl = cut_locus(t)
        nonpos = _nonpositive_corners(t, rep)
        claim = "nonpositive corner curvature gives an empty cut locus"
        rows.append(_row(s, "CUT-LOCUS", claim, {"witnesses": cl.by_radius()}, (not cl.vertices) if nonpos else None))
        try:
            sweep = iso_ball_sweep(t)
            min_ratio = sweep.min_ratio
        except HypothesisError:
            sweep = min_ratio = None
        rt = t.regular_type()
        exact = None
        if rt is not None:
            try:
                exact = iso_regular_exact(*rt)
            except HypothesisError:
                exact = None
        if exact is not None and min_ratio is not None:
            rows.append(_row(s, "ISO-EXACT", "ball ratios are at least the exact isoperimetric constant",
                             {"alpha": exact.value, "min_ball_ratio": min_ratio}, exact <= min_ratio))
        else:
            rows.append(_row(s, "ISO-EXACT", "ball ratios are at least the exact isoperimetric constant", None, None))
        if rep.maximum < 0 and min_ratio is not None:
            K = curvature_at_infinity_estimate(t, report=rep).K
            try:
                C, bound = iso_lower_bound(max(t.face_degree_set()), int(t.degrees[rep.covered].max()), K)
                ok = min_ratio >= bound and (exact is None or exact >= bound)
                rows.append(_row(s, "ISO-LOWER", "isoperimetric ratios are at least 2 C K",
                                 {"C": C, "K": K, "bound": bound, "min_ball_ratio": min_ratio}, ok))
            except HypothesisError:
                rows.append(_row(s, "ISO-LOWER", "isoperimetric ratios are at least 2 C K", None, None))
        else:
            rows.append(_row(s, "ISO-LOWER", "isoperimetric ratios are at least 2 C K", None, None))
        interior = int(rep.covered.sum())
        if interior >= 3 and t.face_degree_set():
            worst = Fraction(0)
            done = 0
            for _ in range(n_sets):
                W = random_simply_connected_set(t, min(30, interior), rng)
                try:
                    r = derksen_check(t, W, report=rep)
                except HypothesisError:
                    continue
                done += 1
                worst = max(worst, abs(r))
            rows.append(_row(s, "DERKSEN", "curvature identity on simply connected sets",
                             {"sets": done, "max_residual": worst}, worst == 0 if done else None))
        else:
            rows.append(_row(s, "DERKSEN", "curvature identity on simply connected sets", None, None))
    # vol(W) = 2 #E_W + #dW holds for any finite set with known degrees
    if t.full_mask.sum() >= 2:
        bad = 0
        for _ in range(n_sets):
            size = int(rng.integers(1, min(40, int(t.full_mask.sum())) + 1))
            W = random_vertex_set(t, size, rng)
            b, vol, e = boundary_and_volume(t, W)
            bad += vol != 2 * e + b
        rows.append(_row(s, "VOL", "vol(W) = 2 #E_W + #dW", {"sets": n_sets, "failures": bad}, bad == 0))
    else:
        rows.append(_row(s, "VOL", "vol(W) = 2 #E_W + #dW", None, None))
    return rows


def _growth_rows(t, rep):
    s = "growth"
    rows = []
    closed = isinstance(t, ClosedTessellation)
    try:
        if closed:
            raise HypothesisError("closed surface")
        tab = recursion_predict(t)
        rows.append(_row(s, "RECUR", "sphere sizes follow the curvature recursion",
                         {"measured": list(tab.sphere_sizes), "predicted": tab.predicted_sequence(),
                          "checked": len(tab.checked_rows)}, tab.ok if tab.checked_rows else None))
    except (HypothesisError, NotInteriorError) as exc:
        rows.append(_row(s, "RECUR", "sphere sizes follow the curvature recursion", str(exc), None))
    rt = None if closed else t.regular_type()
    if rt is not None:
        try:
            root = salem_root(salem_polynomial(*rt))
            value = {"coefficients": salem_polynomial(*rt), "root": root.value, "lo": root.lo, "hi": root.hi}
            ok = root.certified
            try:
                g = growth_rate(t)
                value["sphere_rate"] = g.last_sphere_rate
                value["log_root"] = g.log_root
            except HypothesisError:
                pass
            rows.append(_row(s, "SALEM", "largest real root bracketed with a sign change", value, ok))
        except HypothesisError as exc:
            rows.append(_row(s, "SALEM", "largest real root bracketed with a sign change", str(exc), None))
    else:
        rows.append(_row(s, "SALEM", "largest real root bracketed with a sign change", None, None))
    if not closed and rep.covered.any() and rep.maximum < 0:
        try:
            bb = ball_bounds_check(t)
            lower = [r for r in bb if r.lower is not None]
            rows.append(_row(s, "BALL-LOWER", "#B_r >= (1 + 2Ck)^r",
                             {"radii": len(lower)}, all(r.lower_ok for r in lower) if lower else None))
            rows.append(_row(s, "BALL-TREE", "#B_r is at most the q-regular tree ball",
                             {"radii": len(bb)}, all(r.tree_ok for r in bb)))
        except HypothesisError as exc:
            rows.append(_row(s, "BALL-LOWER", "#B_r >= (1 + 2Ck)^r", str(exc), None))
    else:
        rows.append(_row(s, "BALL-LOWER", "#B_r >= (1 + 2Ck)^r", None, None))
    return rows


def _spectrum_rows(t, rep):
    s = "spectrum"
    rows = []
    if isinstance(t, ClosedTessellation):
        op = laplacian(t)
        lam0 = sym_eigs(op, k=1, vectors=False).lambda0
        rows.append(_row(s, "KERNEL", "constants are harmonic on a closed surface", {"lambda0": lam0}, abs(lam0) < 1e-8))
        for tag in ("FUJIWARA-LOWER", "PAIRING", "COMPACT-EF", "POLAR-RANK"):
            rows.append(_row(s, tag, "infinite planar statement", None, None))
        return rows
    if t.n_vertices > _SPECTRAL_LIMIT or not rep.covered.any():
        for tag in ("FUJIWARA-LOWER", "PAIRING", "COMPACT-EF", "POLAR-RANK"):
            rows.append(_row(s, tag, "patch too large or without interior", None, None))
        return rows
    try:
        lr = lambda0_bounds_report(t)
        value = {"bounds": lr.bounds, "dirichlet": lr.dirichlet, "essential_upper": lr.essential_upper}
        rows.append(_row(s, "FUJIWARA-LOWER", "Dirichlet lambda_0(B_r) decreases and exceeds every lower bound",
                         value, lr.ok))
    except (HypothesisError, NotInteriorError) as exc:
        rows.append(_row(s, "FUJIWARA-LOWER", "Dirichlet lambda_0(B_r) decreases and exceeds every lower bound", str(exc), None))
    try:
        if int(rep.covered.sum()) > _PAIRING_LIMIT:
            raise HypothesisError("interior too large for a report")
        pt = eigen_degree_pairing(t)
        value = [{"degree": r.degree, "eigenvalue": r.eigenvalue, "ratio": r.ratio} for r in pt.rows]
        rows.append(_row(s, "PAIRING", "|lambda_n / d_n - 1| <= 3 / sqrt(d_n) for the top pairs", value, pt.ok))
    except (HypothesisError, NotInteriorError) as exc:
        rows.append(_row(s, "PAIRING", "|lambda_n / d_n - 1| <= 3 / sqrt(d_n) for the top pairs", str(exc), None))
    _, rfull = _full_radius(t, None)
    limit = min(4, rfull)
    nonpos = _nonpositive_corners(t, rep)
    certs = []
    try:
        certs = compact_eigenfunction_search(t, limit)
        value = {"radius_limit": limit, "certificates": [c.as_json() for c in certs[:5]], "count": len(certs)}
        ok = (not certs) if nonpos else (bool(certs) or None)
        claim = "no finitely supported eigenfunction" if nonpos else "exact finitely supported eigenfunctions"
        rows.append(_row(s, "COMPACT-EF", claim, value, ok))
    except (HypothesisError, NotInteriorError) as exc:
        rows.append(_row(s, "COMPACT-EF", "finitely supported eigenfunctions", str(exc), None))
    try:
        pd = polar_ranks(t, radius=limit if limit >= 0 else None)
        value = {"ranks": list(pd.ranks), "sphere_sizes": [len(x) for x in pd.spheres]}
        if nonpos:
            rows.append(_row(s, "POLAR-RANK", "every E_r is injective", value, pd.all_injective))
        elif certs:
            dist = t.rotation.bfs(getattr(t, "center", 0))
            reach = min(int(dist[list(c.support)].max()) for c in certs)
            first = pd.first_deficient()
            value["certificate_radius"] = reach
            rows.append(_row(s, "POLAR-RANK", "a certificate in B_r forces a non-injective E_r' with r' <= r",
                             value, first is not None and first <= reach))
        else:
            rows.append(_row(s, "POLAR-RANK", "every E_r is injective", value, None))
    except (HypothesisError, NotInteriorError) as exc:
        rows.append(_row(s, "POLAR-RANK", "every E_r is injective", str(exc), None))
    return rows


def analyze(t: Tessellation, sections=SECTIONS, seed: int = 0, tol: float = 1e-9, source: dict | None = None,
            n_sets: int = 20) -> dict:
    """Run the requested sections and return a JSON-ready bundle."""
    sections = tuple(SECTIONS if sections in (None, "all") or "all" in sections else sections)
    unknown = set(sections) - set(SECTIONS)
    if unknown:
        raise TessError(f"unknown sections {sorted(unknown)}")
    if tol <= 0:
        raise TessError("tolerance must be positive")
    rng = np.random.default_rng(seed)
    rep = curvature_report(t)
    rows = []
    if "curvature" in sections:
        rows += _curvature_rows(t, rep)
    if "geometry" in sections:
        rows += _geometry_rows(t, rep, rng, n_sets)
    if "growth" in sections:
        rows += _growth_rows(t, rep)
    if "spectrum" in sections:
        rows += _spectrum_rows(t, rep)
    header = {
        "tool": "tesscurv",
        "version": __version__,
        "seed": seed,
        "tol": tol,
        "sections": list(sections),
        "kind": "closed" if isinstance(t, ClosedTessellation) else "patch",
        "vertices": t.n_vertices,
    }
    if source:
        header.update(source)
    return {"header": header, "rows": rows}


def failures(bundle: dict) -> list:
    return [r for r in bundle["rows"] if r["status"] == "fail"]


def to_json(bundle: dict) -> str:
    return json.dumps(bundle, indent=2, sort_keys=True) + "\n"


def to_csv(bundle: dict) -> str:
    """CSV with the header fields as leading ``#`` comment lines."""
    buf = io.StringIO()
    for k in sorted(bundle["header"]):
        buf.write(f"# {k}={bundle['header'][k]}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "tag", "status", "claim", "value"])
    for r in bundle["rows"]:
        w.writerow([r["section"], r["tag"], r["status"], r["claim"], json.dumps(r["value"], sort_keys=True)])
    return buf.getvalue()
