"""Sphere growth of face-regular tessellations.

For a tessellation whose faces all have degree ``p`` and whose cut locus is
empty, sphere sizes obey an ``(N + 1)``-step linear recursion driven by the
normalized sphere curvature averages.  For ``(p, q)``-regular tessellations
the recursion has constant coefficients and its characteristic polynomial
is a reciprocal Salem polynomial whose largest real root governs the
exponential growth rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curvature import curvature_report
from .errors import HypothesisError
from .geometry import bfs_profile, cut_locus
from .surface import Tessellation

__all__ = [
    "RecursionSpec",
    "recursion_spec",
    "RecursionRow",
    "RecursionTable",
    "recursion_predict",
    "salem_polynomial",
    "SalemRoot",
    "salem_root",
    "poly_eval",
    "GrowthRate",
    "growth_rate",
    "ComparisonReport",
    "comparison_check",
    "BallBoundRow",
    "ball_bounds_check",
    "quadratic_growth_constant",
]


@dataclass(frozen=True)
class RecursionSpec:
    p: int
    N: int
    b: tuple


def recursion_spec(p: int) -> RecursionSpec:
    """Depth ``N`` and coefficients ``b_0 .. b_{N-1}`` for face degree ``p``."""
    if p < 3:
        raise HypothesisError("face degree must be at least 3")
    if p % 2 == 0:
        N = (p - 2) // 2
    else:
        N = p - 2
    base = Fraction(4, p - 2)
    b = [base] * N
    if p % 2:
        b[(N - 1) // 2] = base - 2
    return RecursionSpec(p, N, tuple(b))


def _predict_next(spec: RecursionSpec, r: int, S: list, avg: dict) -> Fraction:
    """Predicted ``#S_{r+1}`` from ``#S_1..#S_r`` and averages ``avg[k]``."""
    N, b = spec.N, spec.b
    if r < N:
        return sum(((b[l] - avg[r - l]) * S[r - l] for l in range(r)), Fraction(0)) + S[1]
    total = sum(((b[l] - avg[r - l]) * S[r - l] for l in range(N)), Fraction(0))
    return total if r == N else total - S[r - N]


@dataclass(frozen=True)
class RecursionRow:
    radius: int  # the predicted sphere index r + 1
    measured: int | None
    predicted: Fraction
    average: Fraction  # normalized average curvature of S_r

    @property
    def integral(self) -> bool:
        return self.predicted.denominator == 1

    @property
    def matches(self) -> bool:
        return self.integral and self.measured is not None and self.predicted == self.measured


@dataclass(frozen=True)
class RecursionTable:
    spec: RecursionSpec
    sphere_sizes: tuple
    averages: tuple  # averages[r] for r = 0 .. interior radius
    rows: tuple

    @property
    def checked_rows(self) -> tuple:
        return tuple(r for r in self.rows if r.measured is not None)

    @property
    def ok(self) -> bool:
        rows = self.checked_rows
        return bool(rows) and all(r.matches for r in rows)

    @property
    def interior_radius(self) -> int:
        return len(self.averages) - 1

    def predicted_sequence(self) -> list:
        """``#S_0, #S_1`` followed by the predictions."""
        return list(self.sphere_sizes[:2]) + [int(r.predicted) if r.integral else r.predicted for r in self.rows]


def _face_regular(t: Tessellation) -> int:
    degs = t.face_degree_set()
    if len(degs) != 1:
        raise HypothesisError(f"patch is not face-regular (complete face degrees {sorted(degs)})")
    return next(iter(degs))


def _sphere_averages(t, root, report=None):
    """Normalized averages for every sphere that is entirely interior."""
    p = _face_regular(t)
    report = curvature_report(t) if report is None else report
    root = getattr(t, "center", 0) if root is None else root
    dist = t.rotation.bfs(root)
    rmax = int(dist.max())
    sel = dist >= 0
    count = np.bincount(dist[sel], minlength=rmax + 1)
    bad = np.bincount(dist[sel], weights=~report.covered[sel], minlength=rmax + 1)
    scale = Fraction(2 * p, p - 2)
    out = []
    for r in range(rmax + 1):
        if count[r] == 0 or bad[r] > 0:
            break
        total = int(report.numerators[dist == r].sum())
        out.append(scale * Fraction(total, report.denominator) / int(count[r]))
    return out


def recursion_predict(t: Tessellation, averages=None, root=None, check_cut_locus=True) -> RecursionTable:
    """Predict sphere sizes from the measured normalized averages.

    Predictions start at ``#S_2`` (from ``r = 1``) and continue while the
    spheres entering the formula are interior.

    Raises
    ------
    HypothesisError
        If the patch is not face-regular, or its decidable cut locus is
        nonempty.
    """
    p = _face_regular(t)
    root = getattr(t, "center", 0) if root is None else root
    if check_cut_locus and cut_locus(t, root).vertices:
        raise HypothesisError("cut locus is not empty; the recursion does not apply")
    spec = recursion_spec(p)
    prof = bfs_profile(t, root)
    S = list(prof.sphere_sizes)
    avg = list(_sphere_averages(t, root)) if averages is None else [Fraction(a) for a in averages]
    rows = []
    for r in range(1, len(avg)):
        pred = _predict_next(spec, r, S, {k: avg[k] for k in range(len(avg))})
        measured = S[r + 1] if r + 1 < len(S) else None
        rows.append(RecursionRow(r + 1, measured, pred, avg[r]))
    return RecursionTable(spec, tuple(S), tuple(avg), tuple(rows))


# ---------------------------------------------------------------------------
# Salem polynomial and its root


def salem_polynomial(p: int, q: int) -> list:
    """Integer coefficients of ``g_{p,q}``, constant term first.

    Examples
    --------
    >>> salem_polynomial(7, 3)
    [1, -1, -1, 1, -1, -1, 1]
    """
    if p < 3 or q < 3:
        raise HypothesisError("p and q must be at least 3")
    if Fraction(1, p) + Fraction(1, q) > Fraction(1, 2):
        raise HypothesisError(f"({p},{q}) is spherical")
    N = recursion_spec(p).N
    coeffs = [1] + [-(q - 2)] * N + [1]
    if p % 2:
        coeffs[(N + 1) // 2] = -(q - 4)
    return coeffs


def poly_eval(coeffs, z):
    """Horner evaluation; exact for Fraction ``z``."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class SalemRoot:
    """Largest real root, bracketed exactly.

    ``g(lo) <= 0 <= g(hi)`` (or the reverse) holds in exact arithmetic and
    ``hi - lo <= tol``.
    """

    value: float
    lo: Fraction
    hi: Fraction
    sign_lo: int
    sign_hi: int
    degenerate: bool = False

    @property
    def certified(self) -> bool:
        return self.sign_lo * self.sign_hi <= 0


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def salem_root(coeffs, tol: float = 1e-12) -> SalemRoot:
    """Largest real root by bisection on ``[1, Cauchy bound]``.

    A root at 1 (flat parameters) is returned with ``degenerate=True``.
    """
    coeffs = [int(c) for c in coeffs]
    lead = coeffs[-1]
    g1 = poly_eval(coeffs, 1)
    if g1 == 0:
        return SalemRoot(1.0, Fraction(1), Fraction(1), 0, 0, degenerate=True)
    hi = Fraction(1) + Fraction(max(abs(c) for c in coeffs[:-1]), abs(lead))
    lo = Fraction(1)
    s_lo, s_hi = _sign(g1), _sign(poly_eval(coeffs, hi))
    if s_lo * s_hi > 0:
        raise HypothesisError("no sign change above 1; polynomial has no root in the expected bracket")
    eps = Fraction(tol)
    while hi - lo > eps:
        # dyadic midpoint keeps denominators small
        mid = (lo + hi) / 2
        s = _sign(poly_eval(coeffs, mid))
        if s == 0:
            lo = hi = mid
            s_lo = s_hi = 0
            break
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return SalemRoot(float((lo + hi) / 2), lo, hi, s_lo, s_hi)


# ---------------------------------------------------------------------------
# growth rate


@dataclass(frozen=True)
class GrowthRate:
    """Finite-stage growth-rate sequences ``(1/r) log X_r``.

    ``volume`` entries are ``None`` where the ball touches the boundary.
    """

    radius: int
    sphere: tuple
    ball: tuple
    volume: tuple
    ratio: tuple  # successive sphere ratios S_r / S_{r-1}
    log_root: float | None = None

    @property
    def last_sphere_rate(self) -> float:
        return self.sphere[-1]

    @property
    def relative_error(self) -> float | None:
        if self.log_root is None or self.log_root == 0:
            return None
        return abs(self.last_sphere_rate - self.log_root) / self.log_root


def growth_rate(t: Tessellation, root=None) -> GrowthRate:
    """Growth-rate estimates from the BFS profile of a ball.

    For a ``(p, q)``-regular patch the reference value ``log x_{p,q}`` is
    attached.

    Raises
    ------
    HypothesisError
        With fewer than four radii.
    """
    prof = bfs_profile(t, root)
    R = prof.radius
    if R < 4:
        raise HypothesisError(f"need at least 4 radii, got {R}")
    S, B, V = prof.sphere_sizes, prof.ball_sizes, prof.volumes
    sphere = tuple(math.log(S[r]) / r for r in range(1, R + 1))
    ball = tuple(math.log(B[r]) / r for r in range(1, R + 1))
    vol = tuple(None if V[r] is None else math.log(V[r]) / r for r in range(1, R + 1))
    ratio = tuple(S[r] / S[r - 1] for r in range(1, R + 1))
    log_root = None
    rt = t.regular_type()
    if rt is not None:
        try:
            root_ = salem_root(salem_polynomial(*rt))
            log_root = math.log(root_.value)
        except HypothesisError:
            log_root = None
    return GrowthRate(R, sphere, ball, vol, ratio, log_root)


# ---------------------------------------------------------------------------
# comparison


@dataclass(frozen=True)
class ComparisonReport:
    """Sphere-size differences ``#S_r(B) - #S_r(A)``."""

    differences: tuple
    hypothesis: tuple  # per radius: averages satisfy avg_B <= avg_A <= 0
    admissible_radius: int

    @property
    def nonnegative(self) -> bool:
        return all(d >= 0 for d in self.differences)

    @property
    def nondecreasing(self) -> bool:
        d = self.differences
        return all(b >= a for a, b in zip(d, d[1:]))

    @property
    def ok(self) -> bool:
        return self.nonnegative and self.nondecreasing


def comparison_check(A: Tessellation, B: Tessellation, root_a=None, root_b=None) -> ComparisonReport:
    """Compare two ``p``-face-regular, nonpositively curved balls.

    ``B`` should be the more negatively curved one.  The differences are
    reported on radii where the averaged-curvature hypothesis has been
    verified for every smaller sphere.
    """
    pa, pb = _face_regular(A), _face_regular(B)
    if pa != pb:
        raise HypothesisError(f"face degrees differ: {pa} vs {pb}")
    for t in (A, B):
        rep = curvature_report(t)
        if rep.maximum is not None and rep.maximum > 0:
            raise HypothesisError("comparison needs nonpositive curvature")
    avg_a = _sphere_averages(A, root_a)
    avg_b = _sphere_averages(B, root_b)
    Sa = bfs_profile(A, root_a).sphere_sizes
    Sb = bfs_profile(B, root_b).sphere_sizes
    hyp = []
    for r in range(min(len(avg_a), len(avg_b))):
        hyp.append(avg_b[r] <= avg_a[r] <= 0)
    # #S_{r+1} depends on spheres up to r
    good = 0
    while good < len(hyp) and hyp[good]:
        good += 1
    top = min(good, len(Sa) - 1, len(Sb) - 1)
    diffs = tuple(Sb[r] - Sa[r] for r in range(top + 1))
    return ComparisonReport(diffs, tuple(hyp), top)


# ---------------------------------------------------------------------------
# ball-size bounds


@dataclass(frozen=True)
class BallBoundRow:
    radius: int
    ball: int
    lower: float | None
    upper_literal: int
    upper_tree: int

    @property
    def lower_ok(self) -> bool:
        return self.lower is None or self.ball >= self.lower

    @property
    def literal_ok(self) -> bool:
        return self.ball <= self.upper_literal

    @property
    def tree_ok(self) -> bool:
        return self.ball <= self.upper_tree


def ball_bounds_check(t: Tessellation, root=None) -> list:
    """Compare ball sizes with exponential lower and tree-like upper bounds.

    The lower bound ``(1 + 2Ck)^r`` uses ``Phi <= -k`` over interior
    vertices and ``C = p/(p - 1)`` for the largest face degree ``p``; it is
    only evaluated when curvature is negative and the cut locus empty.  Two
    upper bounds are listed: ``(q - 1)^r`` and the ball size of the
    ``q``-regular tree, ``1 + q((q-1)^r - 1)/(q - 2)``.
    """
    prof = bfs_profile(t, root)
    rep = curvature_report(t)
    q = int(t.degrees[t.interior_mask].max()) if t.interior_mask.any() else int(t.degrees.max())
    pmax = max(t.face_degree_set())
    base = None
    if rep.maximum is not None and rep.maximum < 0 and not cut_locus(t, root).vertices:
        k = -rep.maximum
        base = 1 + 2 * Fraction(pmax, pmax - 1) * k
    rows = []
    for r in range(prof.radius + 1):
        tree = r + 1 if q == 2 else 1 + q * ((q - 1) ** r - 1) // (q - 2)
        rows.append(BallBoundRow(
            r,
            prof.ball_sizes[r],
            None if base is None else float(base) ** r,
            (q - 1) ** r,
            tree,
        ))
    return rows


def quadratic_growth_constant(t: Tessellation, root=None) -> list:
    """``#B_r / r^2`` for ``r >= 1``; bounded for nonnegatively curved
    tessellations."""
    prof = bfs_profile(t, root)
    return [prof.ball_sizes[r] / r**2 for r in range(1, prof.radius + 1)]

