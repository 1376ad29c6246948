"""Combinatorial Laplacian on finite regions of a tessellation.

The operator is ``L = Deg - Adj``, the positive version of the
combinatorial Laplacian ``(Delta phi)(v) = sum_{w ~ v} (phi(w) - phi(v))``.
On a region ``W`` the diagonal keeps the full degree of every vertex
(Dirichlet truncation), so ``lambda_0(W)`` bounds the bottom of the
spectrum of the whole graph from above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .curvature import curvature_at_infinity_estimate, curvature_report
from .errors import HypothesisError, NotInteriorError, TessError
from .exactla import integer_vector, nullspace_exact, rank_exact
from .geometry import _as_mask, bfs_profile, c_pq, iso_regular_exact
from .growth import salem_polynomial, salem_root
from .surface import Tessellation

__all__ = [
    "DENSE_LIMIT",
    "RESIDUAL_TOL",
    "LaplacianOperator",
    "laplacian",
    "laplacian_from_lists",
    "Spectrum",
    "sym_eigs",
    "quadratic_form_residual",
    "Lambda0Report",
    "dirichlet_lambda0",
    "lambda0_bounds_report",
    "PairingRow",
    "PairingTable",
    "beta_angle",
    "eigen_degree_pairing",
    "Certificate",
    "candidate_supports",
    "compact_eigenfunction_search",
    "PolarDecomposition",
    "polar_ranks",
    "DecayProfile",
    "decay_profile",
]

DENSE_LIMIT = 4000
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class LaplacianOperator:
    """``L = Deg - Adj`` restricted to ``vertices`` (rows in that order).

    ``outside[i]`` counts neighbors of ``vertices[i]`` outside the region,
    which is also the row sum of ``L``.
    """

    matrix: sp.csr_matrix
    vertices: np.ndarray
    row_of: np.ndarray  # vertex -> row, -1 outside the region
    outside: np.ndarray
    edges: np.ndarray = field(repr=False)  # region edges as row pairs (i < j)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def max_degree(self) -> int:
        return int(self.matrix.diagonal().max()) if self.size else 0

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


def laplacian(t: Tessellation, region=None) -> LaplacianOperator:
    """Dirichlet Laplacian of ``t`` on ``region`` (all vertices by default).

    Raises
    ------
    NotInteriorError
        If a region vertex is missing neighbors in the patch, so that its
        true degree is unknown.
    """
    rot = t.rotation
    n = t.n_vertices
    mask = np.ones(n, dtype=bool) if region is None else _as_mask(t, region)
    if not t.full_mask[mask].all():
        bad = int(np.flatnonzero(mask & ~t.full_mask)[0])
        raise NotInteriorError(f"vertex {bad} has unknown full degree")
    verts = np.flatnonzero(mask)
    row_of = np.full(n, -1, dtype=np.int64)
    row_of[verts] = np.arange(len(verts))
    src, dst = rot.dart_src, rot.indices
    inside = mask[src] & mask[dst]
    i, j = row_of[src[inside]], row_of[dst[inside]]
    deg = t.degrees[verts].astype(float)
    m = len(verts)
    L = sp.csr_matrix(
        (np.concatenate([deg, -np.ones(len(i))]), (np.concatenate([np.arange(m), i]), np.concatenate([np.arange(m), j]))),
        shape=(m, m),
    )
    L.sum_duplicates()
    outside = np.bincount(src[mask[src] & ~mask[dst]], minlength=n)[verts]
    und = i < j
    return LaplacianOperator(L, verts, row_of, outside, np.stack([i[und], j[und]], axis=1))


def laplacian_from_lists(adjacency) -> LaplacianOperator:
    """Laplacian of an abstract finite graph given as neighbor lists."""
    m = len(adjacency)
    rows, cols = [], []
    for v, nbrs in enumerate(adjacency):
        for w in nbrs:
            rows.append(v)
            cols.append(w)
    deg = np.array([len(a) for a in adjacency], dtype=float)
    L = sp.csr_matrix(
        (np.concatenate([deg, -np.ones(len(rows))]), (np.concatenate([np.arange(m), rows]), np.concatenate([np.arange(m), cols]))),
        shape=(m, m),
    )
    L.sum_duplicates()
    if (L != L.T).nnz:
        raise TessError("adjacency lists are not symmetric")
    r, c = np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64)
    und = r < c
    return LaplacianOperator(
        L, np.arange(m), np.arange(m), np.zeros(m, dtype=np.int64), np.stack([r[und], c[und]], axis=1)
    )


# ---------------------------------------------------------------------------
# eigenvalues


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending eigenvalues with residuals ``||L v - lambda v||``."""

    eigenvalues: np.ndarray
    residuals: np.ndarray
    eigenvectors: np.ndarray | None = None
    method: str = "dense"

    @property
    def lambda0(self) -> float:
        return float(self.eigenvalues[0])

    def certified(self, max_degree: float) -> bool:
        return bool(np.all(self.residuals <= RESIDUAL_TOL * max(max_degree, 1.0)))

    def rows(self) -> list:
        return [(i, float(x), float(r)) for i, (x, r) in enumerate(zip(self.eigenvalues, self.residuals))]


def _matrix(L):
    return L.matrix if isinstance(L, LaplacianOperator) else L


def _positive_definite(M) -> bool:
    """Sylvester test: symmetric elimination with all pivots positive."""
    lu = spla.splu(
        sp.csc_matrix(M),
        permc_spec="MMD_AT_PLUS_A",
        diag_pivot_thresh=0.0,
        options=dict(SymmetricMode=True),
    )
    return bool(np.array_equal(lu.perm_r, lu.perm_c) and (lu.U.diagonal() > 0).all())


def _shift_above(A, v0) -> float:
    """A shift certified to lie above the largest eigenvalue of ``A``.

    A rough Lanczos estimate is pushed up until ``sigma I - A`` is positive
    definite; shift-invert around it then returns exactly the top end.
    """
    n = A.shape[0]
    est = float(spla.eigsh(A, k=1, which="LA", v0=v0, tol=1e-3, return_eigenvectors=False)[0])
    margin = max(0.1, 5e-3 * abs(est))
    eye = sp.identity(n, format="csc")
    for _ in range(40):
        sigma = est + margin
        if _positive_definite(sigma * eye - A):
            return sigma
        margin *= 2
    raise TessError("could not certify a shift above the spectrum")


def sym_eigs(L, k=None, which: str = "smallest", vectors: bool = True, dense_limit: int = DENSE_LIMIT) -> Spectrum:
    """Eigenvalues of a symmetric matrix.

    Parameters
    ----------
    L : LaplacianOperator, sparse or dense matrix
    k : int or None
        Number of eigenpairs; ``None`` asks for all of them, which needs
        the dense path.
    which : {"smallest", "largest"}
    dense_limit : int
        Largest size handed to the dense solver.  Bigger problems use
        shift-invert Lanczos with a fixed start vector.

    Returns
    -------
    Spectrum
        Ascending, whichever end was requested.
    """
    A = _matrix(L)
    n = A.shape[0]
    if n == 0:
        raise TessError("empty matrix")
    if which not in ("smallest", "largest"):
        raise ValueError("which must be 'smallest' or 'largest'")
    if k is None or k >= n:
        if n > dense_limit:
            raise TessError(f"full spectrum of a {n}x{n} matrix exceeds the dense limit {dense_limit}")
        k = n
    if n <= dense_limit:
        M = A.toarray() if sp.issparse(A) else np.asarray(A, dtype=float)
        if k == n:
            w, V = scipy.linalg.eigh(M)
        elif which == "smallest":
            w, V = scipy.linalg.eigh(M, subset_by_index=(0, k - 1))
        else:
            w, V = scipy.linalg.eigh(M, subset_by_index=(n - k, n - 1))
        method = "dense"
    else:
        A = sp.csr_matrix(A)
        v0 = np.random.default_rng(0).standard_normal(n)
        ncv = min(n - 1, max(2 * k + 1, 60))
        if which == "smallest":
            # shift slightly below zero so the factorized matrix is definite
            w, V = spla.eigsh(A, k=k, sigma=-1e-3, which="LM", v0=v0, tol=1e-10, ncv=ncv)
        else:
            w, V = spla.eigsh(A, k=k, sigma=_shift_above(A, v0), which="LM", v0=v0, tol=1e-10, ncv=ncv)
        method = "shift-invert"
        order = np.argsort(w)
        w, V = w[order], V[:, order]
    R = A @ V - V * w
    res = np.linalg.norm(R, axis=0)
    return Spectrum(np.asarray(w), res, V if vectors else None, method)


def quadratic_form_residual(op: LaplacianOperator, phi) -> float:
    """``|<L phi, phi> - (sum over region edges (phi_v - phi_w)^2 +
    sum_v outside_v phi_v^2)|``."""
    phi = np.asarray(phi, dtype=float)
    lhs = float(phi @ (op.matrix @ phi))
    i, j = op.edges[:, 0], op.edges[:, 1]
    rhs = float(np.sum((phi[i] - phi[j]) ** 2) + np.sum(op.outside * phi**2))
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# bottom of the spectrum


def _full_radius(t, root):
    """Largest ``r`` with every vertex of ``B_r`` carrying its full degree."""
    prof = bfs_profile(t, root)
    full = t.full_mask
    r = -1
    for rr in range(prof.radius + 1):
        if not full[prof.distances == rr].all():
            break
        r = rr
    return prof, r


def dirichlet_lambda0(t: Tessellation, root=None, radii=None) -> dict:
    """``lambda_0`` of the Dirichlet Laplacian on balls ``B_r``."""
    prof, rfull = _full_radius(t, root)
    if radii is None:
        radii = range(rfull + 1)
    out = {}
    for r in radii:
        if r > rfull:
            raise NotInteriorError(f"ball of radius {r} reaches the patch boundary")
        op = laplacian(t, (prof.distances >= 0) & (prof.distances <= r))
        out[r] = sym_eigs(op, k=1, vectors=False).lambda0
    return out


@dataclass(frozen=True)
class Lambda0Report:
    """Lower bounds on ``lambda_0`` and Dirichlet values on balls.

    ``bounds`` maps a name to a lower bound for ``lambda_0`` of the whole
    tessellation; every Dirichlet value must exceed each of them.
    ``essential_upper`` is the Fujiwara-type upper bound on the bottom of
    the essential spectrum, listed for context only.
    """

    m: int
    alpha: float | None
    K: Fraction | None
    C: Fraction | None
    bounds: dict
    dirichlet: dict
    essential_upper: float | None
    tol: float = 1e-9

    @property
    def above_bounds(self) -> bool:
        return all(lam >= b - self.tol for lam in self.dirichlet.values() for b in self.bounds.values())

    @property
    def monotone(self) -> bool:
        vals = [self.dirichlet[r] for r in sorted(self.dirichlet)]
        return all(b <= a + self.tol for a, b in zip(vals, vals[1:]))

    @property
    def ok(self) -> bool:
        return self.above_bounds and self.monotone


def lambda0_bounds_report(t: Tessellation, root=None, radii=None) -> Lambda0Report:
    """Compare Dirichlet ``lambda_0(B_r)`` with curvature and isoperimetric
    lower bounds.

    With ``m`` the minimal degree, the bounds are ``m(1 - sqrt(1 - a^2))``
    for the exact isoperimetric constant ``a`` of a ``(p, q)``-regular
    tessellation, and for negative curvature ``m(1 - sqrt(1 - 4C^2K^2))``
    and ``2mK^2``.
    """
    rep = curvature_report(t)
    if not rep.covered.any():
        raise NotInteriorError("no interior vertex")
    cov = rep.covered
    m = int(t.degrees[t.full_mask].min())
    bounds = {}
    alpha = None
    rt = t.regular_type()
    if rt is not None:
        try:
            alpha = iso_regular_exact(*rt).value
        except HypothesisError:
            alpha = None
    if alpha is not None:
        bounds["iso"] = m * (1 - math.sqrt(1 - alpha**2))
    K = C = None
    if rep.maximum < 0:
        K = curvature_at_infinity_estimate(t, report=rep, root=root).K
        pmax = max(t.face_degree_set())
        qmax = int(t.degrees[cov].max())
        try:
            C = c_pq(pmax, qmax)
        except HypothesisError:
            C = None
        if C is not None and 4 * C**2 * K**2 <= 1:
            bounds["curvature"] = m * (1 - math.sqrt(1 - float(4 * C**2 * K**2)))
        bounds["curvature_simple"] = float(2 * m * K**2)
    ess = None
    if rt is not None:
        try:
            x = salem_root(salem_polynomial(*rt)).value
            ess = int(t.degrees[cov].max()) * (1 - 2 * math.sqrt(x) / (x + 1))
        except HypothesisError:
            ess = None
    dirichlet = dirichlet_lambda0(t, root, radii)
    return Lambda0Report(m, alpha, K, C, bounds, dirichlet, ess)


# ---------------------------------------------------------------------------
# eigenvalues versus degrees


def beta_angle(p: int) -> float:
    """Interior angle ``pi (p - 2) / p`` of a regular ``p``-gon."""
    return math.pi * (p - 2) / p


@dataclass(frozen=True)
class PairingRow:
    n: int
    degree: int
    eigenvalue: float
    curvature: Fraction

    @property
    def ratio(self) -> float:
        return self.eigenvalue / self.degree

    @property
    def normalized_gap(self) -> float:
        return (self.eigenvalue - self.degree) / math.sqrt(self.degree)

    @property
    def within_window(self) -> bool:
        # |lambda/d - 1| <= 3/sqrt(d)
        return abs(self.ratio - 1) <= 3 / math.sqrt(self.degree)

    @property
    def angle_ratio(self) -> float:
        return -2 * math.pi * float(self.curvature) / self.eigenvalue


@dataclass(frozen=True)
class PairingTable:
    """Largest Dirichlet eigenvalues paired with the largest degrees.

    This is a finite surrogate of an asymptotic statement about infinite
    graphs.
    """

    rows: tuple
    face_degree: int | None
    region_size: int

    @property
    def ok(self) -> bool:
        return all(r.within_window for r in self.rows)

    @property
    def beta(self) -> float | None:
        return None if self.face_degree is None else beta_angle(self.face_degree)


def eigen_degree_pairing(t: Tessellation, top: int = 10, root=None) -> PairingTable:
    """Pair the ``top`` largest eigenvalues on the interior with the
    ``top`` largest interior degrees.

    Raises
    ------
    HypothesisError
        If the finite-stage curvature bound ``u_r`` does not strictly
        decrease, which stands in for curvature tending to minus infinity.
    """
    rep = curvature_report(t)
    est = curvature_at_infinity_estimate(t, report=rep, root=root)
    u = est.u
    if len(u) < 2 or not all(b < a for a, b in zip(u, u[1:])):
        raise HypothesisError("curvature does not decrease towards the boundary; pairing is inapplicable")
    region = rep.covered
    nreg = int(region.sum())
    if nreg < top:
        raise HypothesisError(f"only {nreg} interior vertices, need {top}")
    op = laplacian(t, region)
    spec = sym_eigs(op, k=top, which="largest", vectors=False)
    lam = spec.eigenvalues[::-1]
    verts = op.vertices
    deg = t.degrees[verts]
    # stable order: degree descending, then id
    order = np.lexsort((verts, -deg))[:top]
    rows = []
    for n, idx in enumerate(order):
        v = int(verts[idx])
        rows.append(PairingRow(n, int(deg[idx]), float(lam[n]), rep.phi(v)))
    fdeg = t.face_degree_set()
    return PairingTable(tuple(rows), fdeg.pop() if len(fdeg) == 1 else None, nreg)


# ---------------------------------------------------------------------------
# compactly supported eigenfunctions


@dataclass(frozen=True)
class Certificate:
    """Exact finitely supported eigenfunction ``L phi = lambda phi``.

    ``values`` are integers on ``support`` (sorted vertex ids); the
    function vanishes elsewhere.
    """

    eigenvalue: Fraction
    support: tuple
    values: tuple

    @property
    def size(self) -> int:
        return len(self.support)

    def as_json(self) -> dict:
        return {
            "eigenvalue": str(self.eigenvalue),
            "support": list(self.support),
            "values": list(self.values),
        }


def verify_certificate(t: Tessellation, cert: Certificate) -> bool:
    """Check ``L phi = lambda phi`` exactly at the support and all its
    neighbors."""
    rot = t.rotation
    phi = dict(zip(cert.support, cert.values))
    check = set(cert.support)
    for v in cert.support:
        check.update(rot.neighbors(v).tolist())
    for v in check:
        if not t.full_mask[v]:
            return False
        acc = int(t.degrees[v]) * phi.get(v, 0) - sum(phi.get(int(w), 0) for w in rot.neighbors(v))
        if Fraction(acc) != cert.eigenvalue * phi.get(v, 0):
            return False
    return True


def candidate_supports(t: Tessellation, radius_limit: int, root=None, max_ball: int = 2) -> list:
    """Face vertex sets and balls ``B_k(v)`` (``k <= max_ball``) inside
    ``B_radius_limit`` whose vertices and neighbors are all fully known."""
    prof = bfs_profile(t, root)
    dist = prof.distances
    rot = t.rotation
    full = t.full_mask
    inside = (dist >= 0) & (dist <= radius_limit)
    # a support is admissible when its vertices and their neighbors are full
    nb_full = full.copy()
    bad_src = rot.dart_src[~full[rot.indices]]
    nb_full[bad_src] = False
    ok = inside & nb_full
    seen = set()
    out = []

    def add(ws):
        key = tuple(sorted(int(w) for w in ws))
        if key and key not in seen and ok[list(key)].all():
            seen.add(key)
            out.append(key)

    tr = t.trace
    for f in np.flatnonzero(t.complete_face_mask).tolist():
        add(tr.face_vertices(f))
    for v in np.flatnonzero(ok).tolist():
        d = rot.bfs(v)
        for k in range(max_ball + 1):
            add(np.flatnonzero((d >= 0) & (d <= k)))
    return out


def _search_one(t, W, tol=1e-8):
    rot = t.rotation
    op = laplacian(t, W)
    verts = op.vertices
    wmask = op.row_of >= 0
    # outer neighbors and their adjacency into W
    src, dst = rot.dart_src, rot.indices
    sel = wmask[src] & ~wmask[dst]
    outer = np.unique(dst[sel])
    B = np.zeros((len(outer), len(verts)), dtype=np.int64)
    opos = {int(u): i for i, u in enumerate(outer)}
    for a, b in zip(src[sel].tolist(), dst[sel].tolist()):
        B[opos[b], op.row_of[a]] = 1
    L = op.dense()
    w, V = np.linalg.eigh(L)
    found = []
    i = 0
    while i < len(w):
        j = i
        while j + 1 < len(w) and abs(w[j + 1] - w[i]) < 1e-7:
            j += 1
        lam_f = w[i]
        E = V[:, i : j + 1]
        if B.size:
            s = np.linalg.svd(B @ E, compute_uv=False)
            nullity = E.shape[1] - int(np.sum(s > tol))
        else:
            nullity = E.shape[1]
        if nullity > 0:
            lam = Fraction(lam_f).limit_denominator(1000)
            Lint = np.rint(L).astype(np.int64)
            M = [[Fraction(int(x)) - (lam if r == c else 0) for c, x in enumerate(row)] for r, row in enumerate(Lint.tolist())]
            M.extend([[Fraction(int(x)) for x in row] for row in B.tolist()])
            for vec in nullspace_exact(M, len(verts)):
                ints = integer_vector(vec)
                supp = [(int(verts[k]), x) for k, x in enumerate(ints) if x]
                found.append(Certificate(lam, tuple(s for s, _ in supp), tuple(x for _, x in supp)))
        i = j + 1
    return found


def compact_eigenfunction_search(t: Tessellation, radius_limit: int, root=None, supports=None, max_ball: int = 2) -> list:
    """Finitely supported eigenfunctions with supports in the candidate
    family.

    Each candidate support ``W`` is tested by diagonalizing ``L`` on ``W``
    and keeping eigenvectors whose sum over ``W``-neighbors vanishes at every
    vertex outside ``W``.  Rational eigenvalues are then confirmed by an
    exact null-space computation, so every returned certificate holds in
    integer arithmetic.  Certificates are deduplicated by support and values.

    Raises
    ------
    HypothesisError
        If no admissible support exists.
    """
    if supports is None:
        supports = candidate_supports(t, radius_limit, root, max_ball)
    if not supports:
        raise HypothesisError("no admissible support within the radius limit")
    seen = set()
    out = []
    for W in supports:
        for cert in _search_one(t, np.asarray(W, dtype=np.int64)):
            key = (cert.eigenvalue, cert.support, cert.values)
            if key in seen or not verify_certificate(t, cert):
                continue
            seen.add(key)
            out.append(cert)
    out.sort(key=lambda c: (c.size, c.eigenvalue, c.support, c.values))
    return out


# ---------------------------------------------------------------------------
# polar decomposition


@dataclass(frozen=True, eq=False)
class PolarDecomposition:
    """Sphere blocks of ``L`` around a root.

    ``E[r]`` is the 0/1 matrix of edges from ``S_r`` (columns) to
    ``S_{r+1}`` (rows); ``D[r]`` is ``L`` restricted to ``S_r``.
    """

    root: int
    spheres: tuple
    D: tuple
    E: tuple
    ranks: tuple

    @property
    def injective(self) -> tuple:
        return tuple(rk == len(self.spheres[r]) for r, rk in enumerate(self.ranks))

    @property
    def all_injective(self) -> bool:
        return all(self.injective)

    def first_deficient(self):
        for r, ok in enumerate(self.injective):
            if not ok:
                return r
        return None

    def reassemble(self) -> np.ndarray:
        """Dense ``L`` on the union of the spheres, in sphere order."""
        sizes = [len(s) for s in self.spheres]
        off = np.concatenate([[0], np.cumsum(sizes)])
        L = np.zeros((off[-1], off[-1]), dtype=np.int64)
        for r, Dr in enumerate(self.D):
            L[off[r] : off[r + 1], off[r] : off[r + 1]] = Dr
        for r, Er in enumerate(self.E):
            if r + 1 < len(sizes):
                L[off[r + 1] : off[r + 2], off[r] : off[r + 1]] = -Er
                L[off[r] : off[r + 1], off[r + 1] : off[r + 2]] = -Er.T
        return L


def polar_ranks(t: Tessellation, root=None, radius: int | None = None) -> PolarDecomposition:
    """Blocks ``D_r``, ``E_r`` and exact ranks of ``E_r``.

    ``E_r`` is formed for every ``r`` whose sphere ``S_r`` has full
    neighborhoods (up to ``radius`` if given).

    Raises
    ------
    NotInteriorError
        If ``radius`` asks for a sphere touching the patch boundary.
    """
    prof, rfull = _full_radius(t, root)
    if radius is None:
        radius = rfull
    elif radius > rfull:
        raise NotInteriorError(f"sphere {radius} touches the patch boundary")
    if radius < 0:
        raise NotInteriorError("the root itself is not full")
    dist = prof.distances
    rot = t.rotation
    spheres = [np.flatnonzero(dist == r) for r in range(radius + 2)]
    pos = np.full(t.n_vertices, -1, dtype=np.int64)
    for s in spheres:
        pos[s] = np.arange(len(s))
    src, dst = rot.dart_src, rot.indices
    D, E, ranks = [], [], []
    for r in range(radius + 1):
        s = spheres[r]
        Dr = np.diag(t.degrees[s].astype(np.int64))
        same = (dist[src] == r) & (dist[dst] == r)
        Dr[pos[src[same]], pos[dst[same]]] = -1
        D.append(Dr)
        up = (dist[src] == r) & (dist[dst] == r + 1)
        Er = np.zeros((len(spheres[r + 1]), len(s)), dtype=np.int64)
        Er[pos[dst[up]], pos[src[up]]] = 1
        E.append(Er)
        ranks.append(rank_exact(Er))
    return PolarDecomposition(int(prof.root), tuple(tuple(s.tolist()) for s in spheres[: radius + 1]), tuple(D), tuple(E), tuple(ranks))


# ---------------------------------------------------------------------------
# decay


@dataclass(frozen=True)
class DecayProfile:
    """Sphere masses ``a_r = sum_{S_r} phi^2`` of an eigenvector."""

    masses: tuple
    log_slopes: tuple

    @property
    def peak(self) -> int:
        return int(np.argmax(self.masses))

    @property
    def decreasing_after_peak(self) -> bool:
        a = self.masses[self.peak :]
        return all(y < x for x, y in zip(a, a[1:]))


def decay_profile(t: Tessellation, op: LaplacianOperator, vector, root=None) -> DecayProfile:
    """Per-sphere mass of an eigenvector living on ``op``'s region."""
    dist = bfs_profile(t, root).distances[op.vertices]
    phi = np.asarray(vector, dtype=float)
    rmax = int(dist.max())
    a = np.bincount(dist, weights=phi**2, minlength=rmax + 1)
    slopes = []
    for x, y in zip(a, a[1:]):
        slopes.append(math.log(y / x) if x > 0 and y > 0 else float("nan"))
    return DecayProfile(tuple(float(x) for x in a), tuple(slopes))
