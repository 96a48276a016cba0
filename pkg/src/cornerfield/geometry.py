"""Strictly convex polyhedral cones and their spherical geometry.

A cone is stored as an apex plus n >= 3 unit edge directions.  Validation
establishes three facts the rest of the package relies on:

* every edge triple is linearly independent (no coplanar degeneracy),
* the edges fit strictly inside an open half space (pointedness), with an
  explicit witness direction and margin,
* no edge is redundant, i.e. each direction is extreme in the conical hull.

The module also provides the simplicial fan used to reduce cone integrals to
three-edge cones, strict separating directions for a chosen edge, membership
tests, and solid-angle bookkeeping on the unit sphere.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.optimize import nnls

from .errors import (
    ConeError,
    DegenerateCone,
    NoSeparator,
    NotStrictlyConvex,
    RedundantEdge,
    TooFewEdges,
)

EPS_DEGENERATE = 1e-9      # triple-product floor separating coplanarity from round-off
EPS_UNIT = 1e-12           # unit-norm tolerance
EPS_REDUNDANT = 1e-9       # nonnegative least-squares residual identifying a redundant edge


def as_unit(v, tol: float = 1e-8) -> np.ndarray:
    """Return ``v`` normalized, warning if the correction exceeds ``tol``."""
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise ValueError("zero vector cannot be normalized")
    if abs(n - 1.0) > tol:
        warnings.warn(f"renormalizing vector with |v| = {n:.3e}", stacklevel=2)
    return v / n


def is_unit(v, tol: float = EPS_UNIT) -> bool:
    return abs(float(v @ v) - 1.0) <= 3.0 * tol


@dataclass(frozen=True)
class ConvexityReport:
    """Outcome of cone validation.

    ``pointedness`` is delta = max over unit u of min_j u . w_j, the margin by
    which the edges fit in the half space {x . u > 0}; ``witness`` attains it.
    """

    pointedness: float
    witness: np.ndarray
    min_triple_product: float
    n_edges: int


def _min_norm_hull_point(points: np.ndarray) -> tuple[float, np.ndarray]:
    """Distance from the origin to conv(points) and the attaining point.

    By LP duality, max_{|u|<=1} min_j u . w_j equals this distance, and the
    optimal witness is the attaining point normalized.  The minimizer lies on
    a face spanned by at most 3 vertices, so exhaustive enumeration over
    subsets of size <= 3 is exact for the small n used here.
    """
    n = len(points)
    best = np.inf
    best_pt = points[0]
    for size in (1, 2, 3):
        for idx in combinations(range(n), size):
            sub = points[list(idx)]
            gram = sub @ sub.T
            # KKT system of min |lam . sub|^2 subject to sum(lam) = 1; solved
            # by least squares so rank-deficient subsets (antipodal pairs)
            # still yield their minimizer
            kkt = np.zeros((size + 1, size + 1))
            kkt[:size, :size] = 2.0 * gram
            kkt[:size, size] = 1.0
            kkt[size, :size] = 1.0
            rhs = np.zeros(size + 1)
            rhs[size] = 1.0
            sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
            lam = sol[:size]
            if abs(lam.sum() - 1.0) > 1e-9 or np.any(lam < -1e-13):
                continue
            pt = lam @ sub
            d = float(np.linalg.norm(pt))
            if d < best:
                best = d
                best_pt = pt
    return best, best_pt


def validate_cone(edges: Sequence, eps_deg: float = EPS_DEGENERATE) -> ConvexityReport:
    """Validate edge directions of a strictly convex polyhedral cone.

    Raises TooFewEdges, DegenerateCone, NotStrictlyConvex, or RedundantEdge.
    On success returns the pointedness margin, its witness direction, and the
    minimum absolute triple product over edge triples.
    """
    W = np.asarray(edges, dtype=float)
    if W.ndim != 2 or W.shape[1] != 3:
        raise ValueError("edges must be an (n, 3) array of unit vectors")
    n = len(W)
    if n < 3:
        raise TooFewEdges(f"need at least 3 edges, got {n}")
    norms = np.linalg.norm(W, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-8):
        raise ValueError("edges must be unit vectors (normalize on load)")

    delta, pt = _min_norm_hull_point(W)
    if delta <= 1e-12:
        raise NotStrictlyConvex(f"pointedness delta = {delta:.3e} <= 0")
    witness = pt / np.linalg.norm(pt)

    min_trip = np.inf
    for i, j, l in combinations(range(n), 3):
        trip = abs(float(np.linalg.det(W[[i, j, l]])))
        min_trip = min(min_trip, trip)
    if min_trip <= eps_deg:
        raise DegenerateCone(
            f"minimum |det[w_i w_j w_l]| = {min_trip:.3e} <= {eps_deg:.1e}"
        )

    # extremality: w_j must not be a nonnegative combination of the others
    for j in range(n):
        others = np.delete(W, j, axis=0)
        coeff, resid = nnls(others.T, W[j])
        if resid < EPS_REDUNDANT:
            raise RedundantEdge(
                f"edge {j} lies in the conical hull of the others (residual {resid:.1e})"
            )

    return ConvexityReport(
        pointedness=float(delta),
        witness=witness,
        min_triple_product=float(min_trip),
        n_edges=n,
    )


@dataclass(frozen=True)
class PolyhedralCone:
    """Strictly convex polyhedral cone: apex plus n >= 3 unit edge directions.

    Construction validates the edges; instances are immutable and safe to
    share between threads.
    """

    apex: np.ndarray
    edges: np.ndarray

    def __init__(self, apex, edges):
        apex = np.asarray(apex, dtype=float).reshape(3)
        W = np.asarray([as_unit(e) for e in np.asarray(edges, dtype=float)])
        report = validate_cone(W)
        object.__setattr__(self, "apex", apex)
        object.__setattr__(self, "edges", W)
        object.__setattr__(self, "_report", report)
        apex.setflags(write=False)
        W.setflags(write=False)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def report(self) -> ConvexityReport:
        return self._report

    @property
    def witness(self) -> np.ndarray:
        """Unit direction u with u . w_j >= pointedness for every edge."""
        return self._report.witness

    @cached_property
    def angular_order(self) -> np.ndarray:
        """Edge indices sorted by azimuth in the plane orthogonal to the witness.

        Strict convexity makes the cross-section a convex polygon, so this
        cyclic order is the boundary order of the spherical patch.
        """
        u = self.witness
        a = _orthonormal_to(u)
        b = np.cross(u, a)
        proj_a = self.edges @ a
        proj_b = self.edges @ b
        if np.any(np.hypot(proj_a, proj_b) < 1e-12):
            raise DegenerateCone("an edge coincides with the pointedness witness")
        ang = np.arctan2(proj_b, proj_a)
        return np.argsort(ang, kind="stable")

    def neighbors(self, edge_index: int) -> tuple[int, int]:
        """Indices of the two fan-neighbor edges of ``edge_index``."""
        order = list(self.angular_order)
        pos = order.index(edge_index)
        n = len(order)
        return order[(pos - 1) % n], order[(pos + 1) % n]

    def to_json(self) -> str:
        return json.dumps({"apex": self.apex.tolist(), "edges": self.edges.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "PolyhedralCone":
        data = json.loads(text)
        edges = [as_unit(e) for e in data["edges"]]
        return cls(np.asarray(data.get("apex", [0.0, 0.0, 0.0])), np.asarray(edges))


@dataclass(frozen=True)
class SimplicialCone:
    """Cone on exactly three linearly independent unit edges."""

    apex: np.ndarray
    edges: np.ndarray

    def __init__(self, apex, edges):
        apex = np.asarray(apex, dtype=float).reshape(3)
        W = np.asarray(edges, dtype=float).reshape(3, 3)
        trip = abs(float(np.linalg.det(W)))
        if trip <= EPS_DEGENERATE:
            raise DegenerateCone(f"|det[w1 w2 w3]| = {trip:.3e}")
        object.__setattr__(self, "apex", apex)
        object.__setattr__(self, "edges", W)
        object.__setattr__(self, "triple_product", trip)

    triple_product: float = 0.0  # set in __init__


@dataclass(frozen=True)
class TruncatedCone:
    """Intersection of a cone with the ball of radius ``radius`` about its apex."""

    cone: PolyhedralCone
    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError(f"truncation radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class SphericalPolygon:
    """Intersection of a cone with the unit sphere, split into triangle cells."""

    vertices: np.ndarray            # (n, 3) edge directions in boundary order
    cells: tuple                    # tuple of (3, 3) arrays, fan triangles
    cell_solid_angles: np.ndarray   # per-cell solid angle (l'Huilier)

    @property
    def solid_angle(self) -> float:
        return float(self.cell_solid_angles.sum())


def _orthonormal_to(u: np.ndarray) -> np.ndarray:
    """Any unit vector orthogonal to unit ``u``."""
    k = int(np.argmin(np.abs(u)))
    e = np.zeros(3)
    e[k] = 1.0
    a = e - (e @ u) * u
    return a / np.linalg.norm(a)


def simplicial_fan(cone: PolyhedralCone) -> tuple[SimplicialCone, ...]:
    """Split the cone into n - 2 interior-disjoint simplicial cones.

    Edges are taken in the angular order around the pointedness witness and
    fanned from the first edge of that order.
    """
    order = cone.angular_order
    W = cone.edges[order]
    n = len(W)
    cells = []
    for i in range(1, n - 1):
        cells.append(SimplicialCone(cone.apex, np.stack([W[0], W[i], W[i + 1]])))
    return tuple(cells)


def fan_from(cone: PolyhedralCone, root_index: int) -> tuple[SimplicialCone, ...]:
    """Fan rooted at a chosen edge (used for fan-independence checks)."""
    order = list(cone.angular_order)
    pos = order.index(root_index)
    order = order[pos:] + order[:pos]
    W = cone.edges[order]
    cells = []
    for i in range(1, len(W) - 1):
        cells.append(SimplicialCone(cone.apex, np.stack([W[0], W[i], W[i + 1]])))
    return tuple(cells)


def separating_direction(cone: PolyhedralCone, edge_index: int) -> tuple[np.ndarray, float]:
    """Unit z with z . w1 = 0 and z . w_j < -kappa for all other edges.

    Maximizes kappa over the circle of directions orthogonal to w1.  The
    maximum of min_j(-z . w_j) on that circle is attained either at a peak of
    one sinusoid or at a crossing of two, so the exact candidate set is
    enumerated in closed form.

    Raises NoSeparator when the best margin is not strictly positive.
    """
    W = cone.edges
    w1 = W[edge_index]
    others = np.delete(W, edge_index, axis=0)
    a = _orthonormal_to(w1)
    b = np.cross(w1, a)
    # -z(phi) . w_j = C_j cos(phi) + S_j sin(phi)
    C = -(others @ a)
    S = -(others @ b)

    candidates = list(np.arctan2(S, C))  # per-sinusoid peaks
    m = len(others)
    for i in range(m):
        for j in range(i + 1, m):
            dc, ds = C[i] - C[j], S[i] - S[j]
            if abs(dc) < 1e-15 and abs(ds) < 1e-15:
                continue
            phi = np.arctan2(-dc, ds)
            candidates.extend([phi, phi + np.pi])

    best_phi, best_kappa = None, -np.inf
    for phi in candidates:
        g = C * np.cos(phi) + S * np.sin(phi)
        kappa = float(g.min())
        if kappa > best_kappa:
            best_kappa, best_phi = kappa, phi
    if best_kappa <= 0.0:
        raise NoSeparator(
            f"no strict separator for edge {edge_index} (best margin {best_kappa:.3e})"
        )
    z = np.cos(best_phi) * a + np.sin(best_phi) * b
    # z . w1 = 0 holds by construction up to rounding; re-project for safety
    z = z - (z @ w1) * w1
    z = z / np.linalg.norm(z)
    return z, best_kappa


def cone_coordinates(sc: SimplicialCone, x: np.ndarray) -> np.ndarray:
    """Coefficients c with x - apex = sum c_j w_j for a simplicial cone."""
    return np.linalg.solve(sc.edges.T, np.asarray(x, dtype=float) - sc.apex)


def contains(cone: PolyhedralCone, x) -> bool:
    """Open-cone membership: true iff x - apex sits strictly inside some fan cell.

    Boundary points return False (the paper's coefficients are strictly
    positive); use explicit face tests where boundary behaviour matters.
    """
    x = np.asarray(x, dtype=float)
    for sc in simplicial_fan(cone):
        c = cone_coordinates(sc, x)
        if np.all(c > 0.0):
            return True
    return False


def contains_many(cone: PolyhedralCone, pts: np.ndarray) -> np.ndarray:
    """Vectorized open-cone membership for an (m, 3) array of points."""
    pts = np.asarray(pts, dtype=float)
    out = np.zeros(len(pts), dtype=bool)
    for sc in simplicial_fan(cone):
        c = np.linalg.solve(sc.edges.T, (pts - sc.apex).T)
        out |= np.all(c > 0.0, axis=0)
    return out


def spherical_triangle_solid_angle(v1, v2, v3) -> float:
    """Solid angle of the spherical triangle on unit vertices, by l'Huilier."""
    def arc(p, q):
        return float(np.arctan2(np.linalg.norm(np.cross(p, q)), p @ q))

    a, b, c = arc(v2, v3), arc(v1, v3), arc(v1, v2)
    s = 0.5 * (a + b + c)
    t = (
        np.tan(0.5 * s)
        * np.tan(0.5 * (s - a))
        * np.tan(0.5 * (s - b))
        * np.tan(0.5 * (s - c))
    )
    t = max(t, 0.0)
    return float(4.0 * np.arctan(np.sqrt(t)))


def spherical_patch(cone: PolyhedralCone) -> SphericalPolygon:
    """The cone's trace on the unit sphere with its fan-triangle cells."""
    order = cone.angular_order
    verts = cone.edges[order]
    cells = []
    angles = []
    for sc in simplicial_fan(cone):
        cells.append(sc.edges)
        angles.append(spherical_triangle_solid_angle(*sc.edges))
    return SphericalPolygon(
        vertices=verts,
        cells=tuple(cells),
        cell_solid_angles=np.asarray(angles),
    )


def polygon_solid_angle_excess(vertices: np.ndarray) -> float:
    """Solid angle of a convex spherical polygon by angle excess.

    Independent of the fan split: sum of interior angles minus (n - 2) pi.
    """
    V = np.asarray(vertices, dtype=float)
    n = len(V)
    total = 0.0
    for i in range(n):
        p, q, r = V[(i - 1) % n], V[i], V[(i + 1) % n]
        tp = p - (p @ q) * q
        tr = r - (r @ q) * q
        tp /= np.linalg.norm(tp)
        tr /= np.linalg.norm(tr)
        total += float(np.arccos(np.clip(tp @ tr, -1.0, 1.0)))
    return total - (n - 2) * np.pi


def patch_min_decay(cone: PolyhedralCone, direction: np.ndarray) -> float:
    """min over the closed spherical patch of -direction . theta.

    For a direction with negative dot against the whole patch this is the
    slowest decay rate of e^{t * direction . x} over the cone.  The minimum of
    a linear functional on the patch is attained at a vertex or at the
    geodesic projection onto a boundary arc; both candidate sets are closed
    form, so the result is exact up to rounding.
    """
    d = np.asarray(direction, dtype=float)
    order = cone.angular_order
    V = cone.edges[order]
    n = len(V)
    best = float(np.min(-(V @ d)))
    for i in range(n):
        u, v = V[i], V[(i + 1) % n]
        dot_uv = float(np.clip(u @ v, -1.0, 1.0))
        delta = np.arccos(dot_uv)
        if delta < 1e-12:
            continue
        # theta(t) = (sin((1-t)D) u + sin(tD) v)/sin(D); maximize d . theta
        A, B = float(d @ u), float(d @ v)
        # interior critical point: tan(psi) = (B - A cos D)/(A sin D), psi = tD
        denom = A * np.sin(delta)
        if abs(denom) < 1e-300:
            continue
        psi = np.arctan2(B - A * np.cos(delta), denom)
        t = psi / delta
        if 0.0 < t < 1.0:
            theta = (np.sin((1 - t) * delta) * u + np.sin(t * delta) * v) / np.sin(delta)
            best = min(best, float(-(theta @ d)))
    return best


def random_cone(rng: np.random.Generator, n_edges: int = 3, max_tries: int = 200,
                cap_half_angle: float = 1.1) -> PolyhedralCone:
    """Random validated cone: edges inside a spherical cap around a random axis."""
    for _ in range(max_tries):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        a = _orthonormal_to(axis)
        b = np.cross(axis, a)
        az = np.sort(rng.uniform(0.0, 2 * np.pi, size=n_edges))
        if np.min(np.diff(np.concatenate([az, [az[0] + 2 * np.pi]]))) < 0.3:
            continue
        polar = rng.uniform(0.35, cap_half_angle, size=n_edges)
        edges = (
            np.cos(polar)[:, None] * axis
            + np.sin(polar)[:, None] * (np.cos(az)[:, None] * a + np.sin(az)[:, None] * b)
        )
        try:
            return PolyhedralCone(np.zeros(3), edges)
        except (ConeError, ValueError):
            continue
    raise RuntimeError("failed to sample a valid cone")
