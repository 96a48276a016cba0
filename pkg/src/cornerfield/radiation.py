"""Radiation of compactly supported time-harmonic current pairs.

The governing system in free space, with the outgoing (Silver-Muller)
condition, is

    curl E - i omega mu0 H = J1,
    curl H + i omega eps0 E = J2,
    |x| (sqrt(mu0) H x xhat - sqrt(eps0) E) -> 0,

with time convention e^{-i omega t} implied by the outgoing kernel
Phi(x, y) = e^{ik|x-y|} / (4 pi |x-y|).  Eliminating H gives
(curl curl - k^2) E = i omega mu0 J2 + curl J1, solved by

    E = i omega mu0 (A + grad div A / k^2) + curl C,
    H = -i omega eps0 (C + grad div C / k^2) + curl A,

where A and C are the volume potentials of J2 and J1.  The far-field
amplitudes follow from the |x| -> infinity limit:

    E_inf(xhat) = (1/4 pi) [ i omega mu0 (I - xhat xhat) J2hat + i k xhat x J1hat ],
    H_inf(xhat) = (1/4 pi) [ -i omega eps0 (I - xhat xhat) J1hat + i k xhat x J2hat ],

with Jhat the plane-wave moments integral of e^{-i k xhat . y} J(y) dy.  The
representation is pinned by two validations: the Maxwell residual vanishes at
exterior points, and curl-pair sources (J1, J2) = (curl P1 - i omega mu0 P2,
curl P2 + i omega eps0 P1) radiate nothing.

For eps0 = mu0 the far fields satisfy H_inf = xhat x E_inf exactly; general
media carry the impedance factor sqrt(eps0/mu0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.spatial import ConvexHull

from .cgo import bdot
from .errors import GridMismatch, PointInSupport, UnsupportedPotential
from .geometry import PolyhedralCone, TruncatedCone, contains_many
from .integrals import build_rule


@dataclass(frozen=True)
class Medium:
    """Homogeneous background: angular frequency and material constants."""

    omega: float
    eps0: float = 1.0
    mu0: float = 1.0

    def __post_init__(self):
        if min(self.omega, self.eps0, self.mu0) <= 0.0:
            raise ValueError("omega, eps0, mu0 must all be positive")

    @property
    def k(self) -> float:
        return self.omega * np.sqrt(self.eps0 * self.mu0)

    @property
    def impedance_ratio(self) -> float:
        """sqrt(eps0 / mu0); equals 1 in the default unit system."""
        return np.sqrt(self.eps0 / self.mu0)


# --------------------------------------------------------------------------
# source supports and their quadratures
# --------------------------------------------------------------------------

def _points_per_dim(k: float, diameter: float, base: int, scale: float) -> int:
    """At least ten quadrature points per wavelength across the support."""
    waves = k * diameter / (2.0 * np.pi)
    return max(base, int(np.ceil(10.0 * waves * scale)))


@dataclass(frozen=True)
class BallSupport:
    center: np.ndarray
    radius: float

    def __init__(self, center, radius):
        object.__setattr__(self, "center", np.asarray(center, dtype=float).reshape(3))
        object.__setattr__(self, "radius", float(radius))
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def contains(self, pts) -> np.ndarray:
        pts = np.atleast_2d(pts)
        return np.linalg.norm(pts - self.center, axis=1) <= self.radius

    def quadrature(self, k: float, order_scale: float = 1.0):
        n_r = _points_per_dim(k, self.diameter, 8, order_scale)
        n_t = _points_per_dim(k, self.diameter, 10, order_scale)
        n_p = 2 * n_t
        xr, wr = np.polynomial.legendre.leggauss(n_r)
        r = 0.5 * self.radius * (xr + 1.0)
        wr = 0.5 * self.radius * wr
        xc, wc = np.polynomial.legendre.leggauss(n_t)   # cos(theta) nodes
        phi = 2.0 * np.pi * np.arange(n_p) / n_p
        wp = 2.0 * np.pi / n_p
        st = np.sqrt(1.0 - xc**2)
        dirs = np.stack(
            [
                np.outer(st, np.cos(phi)).ravel(),
                np.outer(st, np.sin(phi)).ravel(),
                np.outer(xc, np.ones(n_p)).ravel(),
            ],
            axis=1,
        )
        wdir = (np.outer(wc, np.full(n_p, wp))).ravel()
        pts = self.center[None, :] + r[:, None, None] * dirs[None, :, :]
        w = (wr * r**2)[:, None] * wdir[None, :]
        return pts.reshape(-1, 3), w.ravel()

    def volume(self) -> float:
        return 4.0 * np.pi * self.radius**3 / 3.0


@dataclass(frozen=True)
class BoxSupport:
    lo: np.ndarray
    hi: np.ndarray

    def __init__(self, lo, hi):
        lo = np.asarray(lo, dtype=float).reshape(3)
        hi = np.asarray(hi, dtype=float).reshape(3)
        if np.any(hi <= lo):
            raise ValueError("box must have positive extent on every axis")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(self.hi - self.lo))

    def contains(self, pts) -> np.ndarray:
        pts = np.atleast_2d(pts)
        return np.all((pts >= self.lo) & (pts <= self.hi), axis=1)

    def quadrature(self, k: float, order_scale: float = 1.0):
        nodes, wts = [], []
        for a, b in zip(self.lo, self.hi):
            n = _points_per_dim(k, b - a, 8, order_scale)
            x, w = np.polynomial.legendre.leggauss(n)
            nodes.append(a + 0.5 * (b - a) * (x + 1.0))
            wts.append(0.5 * (b - a) * w)
        X, Y, Z = np.meshgrid(*nodes, indexing="ij")
        W = (
            wts[0][:, None, None]
            * wts[1][None, :, None]
            * wts[2][None, None, :]
        )
        pts = np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=1)
        return pts, W.ravel()

    def volume(self) -> float:
        return float(np.prod(self.hi - self.lo))


@dataclass(frozen=True)
class ConeSupport:
    """Truncated polyhedral cone used directly as a source support."""

    tc: TruncatedCone

    @property
    def diameter(self) -> float:
        return 2.0 * self.tc.radius

    def contains(self, pts) -> np.ndarray:
        pts = np.atleast_2d(pts)
        inside = contains_many(self.tc.cone, pts)
        inside &= np.linalg.norm(pts - self.tc.cone.apex, axis=1) <= self.tc.radius
        return inside

    def quadrature(self, k: float, order_scale: float = 1.0):
        n = _points_per_dim(k, self.tc.radius, 6, order_scale)
        rule = build_rule(self.tc, n_ang=n, n_rad=max(8, n))
        apex = self.tc.cone.apex
        r, wr = rule.radial_nodes, rule.radial_weights
        pts_list, w_list = [], []
        for theta, wt in rule.cells:
            pts = apex[None, None, :] + r[None, :, None] * theta[:, None, :]
            w = wt[:, None] * (wr * r**2)[None, :]
            pts_list.append(pts.reshape(-1, 3))
            w_list.append(w.ravel())
        return np.vstack(pts_list), np.concatenate(w_list)

    def volume(self) -> float:
        from .geometry import spherical_patch

        return spherical_patch(self.tc.cone).solid_angle * self.tc.radius**3 / 3.0


@dataclass(frozen=True)
class PolyhedronSupport:
    """Convex polyhedron given by its vertices; tetrahedralized from the centroid."""

    vertices: np.ndarray

    def __init__(self, vertices):
        V = np.asarray(vertices, dtype=float)
        if V.ndim != 2 or V.shape[1] != 3 or len(V) < 4:
            raise ValueError("need at least 4 vertices of shape (n, 3)")
        object.__setattr__(self, "vertices", V)
        hull = ConvexHull(V)
        object.__setattr__(self, "_hull_eq", hull.equations.copy())
        object.__setattr__(self, "_simplices", hull.simplices.copy())

    @property
    def diameter(self) -> float:
        V = self.vertices
        return float(max(np.linalg.norm(V[i] - V[j]) for i in range(len(V)) for j in range(i)))

    def contains(self, pts) -> np.ndarray:
        pts = np.atleast_2d(pts)
        A = self._hull_eq[:, :3]
        b = self._hull_eq[:, 3]
        return np.all(pts @ A.T + b <= 1e-12, axis=1)

    def _tetrahedra(self):
        centroid = self.vertices.mean(axis=0)
        for tri in self._simplices:
            yield centroid, *self.vertices[tri]

    def quadrature(self, k: float, order_scale: float = 1.0):
        n = _points_per_dim(k, self.diameter, 5, 0.5 * order_scale)
        x, w = np.polynomial.legendre.leggauss(n)
        x = 0.5 * (x + 1.0)
        w = 0.5 * w
        U, V, W3 = np.meshgrid(x, x, x, indexing="ij")
        WU, WV, WW = np.meshgrid(w, w, w, indexing="ij")
        u, v, ww = U.ravel(), V.ravel(), W3.ravel()
        base_w = (WU * WV * WW).ravel() * u**2 * v
        pts_list, w_list = [], []
        for v0, v1, v2, v3 in self._tetrahedra():
            e1, e2, e3 = v1 - v0, v2 - v1, v3 - v2
            vol6 = abs(float(np.linalg.det(np.stack([e1, e2, e3]))))
            pts = (
                v0[None, :]
                + u[:, None] * e1[None, :]
                + (u * v)[:, None] * e2[None, :]
                + (u * v * ww)[:, None] * e3[None, :]
            )
            pts_list.append(pts)
            w_list.append(base_w * vol6)
        return np.vstack(pts_list), np.concatenate(w_list)

    def volume(self) -> float:
        total = 0.0
        for v0, v1, v2, v3 in self._tetrahedra():
            total += abs(np.linalg.det(np.stack([v1 - v0, v2 - v0, v3 - v0]))) / 6.0
        return total


# --------------------------------------------------------------------------
# sources
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CornerInfo:
    """Corner metadata for admissibility bookkeeping.

    ``path_to_infinity`` is declared by the scene author, not computed: the
    existence of an exterior path from the apex to infinity is an input flag.
    """

    apex: np.ndarray
    cone: Optional[PolyhedralCone] = None
    alpha: Optional[float] = None
    lipschitz_support: bool = True
    path_to_infinity: bool = True


def _zero_density(pts):
    return np.zeros((len(np.atleast_2d(pts)), 3), dtype=complex)


@dataclass(frozen=True)
class CurrentSource:
    """Current pair (j1 in the curl-E equation, j2 in the curl-H equation).

    Densities evaluate to (m, 3) complex arrays on (m, 3) points, are finite
    on the closed support, and are extended by zero outside it; the support
    object handles quadrature and membership.
    """

    support: object
    j1: Callable = _zero_density
    j2: Callable = _zero_density
    corners: tuple = ()
    holder_alpha: Optional[float] = None
    label: str = ""

    def quadrature(self, medium: Medium, order_scale: float = 1.0):
        return self.support.quadrature(medium.k, order_scale)

    def density_scale(self, medium: Medium) -> float:
        """max(|j1|, |j2|) sampled on the quadrature nodes."""
        pts, _ = self.quadrature(medium)
        m1 = float(np.max(np.linalg.norm(self.j1(pts), axis=1), initial=0.0))
        m2 = float(np.max(np.linalg.norm(self.j2(pts), axis=1), initial=0.0))
        return max(m1, m2)


def constant_density(vector) -> Callable:
    vec = np.asarray(vector, dtype=complex)

    def dens(pts):
        return np.broadcast_to(vec, (len(np.atleast_2d(pts)), 3)).copy()

    return dens


def holder_radial_density(F0, alpha: float, direction, apex) -> Callable:
    """F(x) = F0 + |x - apex|^alpha * direction; Holder of index alpha at the apex."""
    F0 = np.asarray(F0, dtype=complex)
    u = np.asarray(direction, dtype=complex)
    apex = np.asarray(apex, dtype=float)

    def dens(pts):
        pts = np.atleast_2d(pts)
        r = np.linalg.norm(pts - apex, axis=1)
        return F0[None, :] + (r**alpha)[:, None] * u[None, :]

    return dens


# --------------------------------------------------------------------------
# near and far fields
# --------------------------------------------------------------------------

def _kernel_parts(x: np.ndarray, ypts: np.ndarray, k: float):
    """Phi, f', f''/..., unit offsets for the outgoing Helmholtz kernel."""
    R = x[None, :] - ypts
    r = np.linalg.norm(R, axis=1)
    rhat = R / r[:, None]
    phi = np.exp(1j * k * r) / (4.0 * np.pi * r)
    fp = phi * (1j * k - 1.0 / r)
    fpp = fp * (1j * k - 1.0 / r) + phi / r**2
    return phi, fp, fpp, r, rhat


def near_field(source: CurrentSource, medium: Medium, x, order_scale: float = 1.0):
    """(E, H) at an exterior point via the volume-potential representation."""
    x = np.asarray(x, dtype=float).reshape(3)
    if bool(source.support.contains(x[None, :])[0]):
        raise PointInSupport(f"evaluation point {x} lies in the source support")
    pts, w = source.quadrature(medium, order_scale)
    j1 = np.asarray(source.j1(pts), dtype=complex)
    j2 = np.asarray(source.j2(pts), dtype=complex)
    phi, fp, fpp, r, rhat = _kernel_parts(x, pts, medium.k)
    k2 = medium.k**2
    omega, eps0, mu0 = medium.omega, medium.eps0, medium.mu0

    def smoothed_potential(j):
        """(I + grad div / k^2) applied to the volume potential of j."""
        jr = bdot(rhat, j)
        term = (
            phi[:, None] * j
            + (fpp[:, None] * jr[:, None] * rhat
               + (fp / r)[:, None] * (j - jr[:, None] * rhat)) / k2
        )
        return w @ term

    def curl_potential(j):
        return w @ (fp[:, None] * np.cross(rhat, j))

    E = 1j * omega * mu0 * smoothed_potential(j2) + curl_potential(j1)
    H = -1j * omega * eps0 * smoothed_potential(j1) + curl_potential(j2)
    return E, H


def default_sphere_grid(n_theta: int = 21, n_phi: int = 42, include_axes: bool = True) -> np.ndarray:
    """Latitude-longitude sampling of the unit sphere plus the six axis points."""
    theta = (np.arange(n_theta) + 0.5) * np.pi / n_theta
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    T, P = np.meshgrid(theta, phi, indexing="ij")
    pts = np.stack(
        [np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1
    ).reshape(-1, 3)
    if include_axes:
        axes = np.concatenate([np.eye(3), -np.eye(3)])
        pts = np.vstack([pts, axes])
    return pts


@dataclass(frozen=True)
class FarFieldPattern:
    """Sampled far-field amplitudes (E_inf, H_inf) on a unit-sphere grid."""

    grid: np.ndarray
    E: np.ndarray
    H: np.ndarray

    def sup_norm(self) -> float:
        return float(np.max(np.linalg.norm(self.E, axis=1), initial=0.0))

    def residuals(self, medium: Optional[Medium] = None) -> dict:
        """Tangentiality and cross-relation residuals, relative to the pattern scale.

        The cross relations are H = z * (xhat x E) and E = -(1/z)(xhat x H)
        with impedance factor z = sqrt(eps0/mu0) (z = 1 in default units).
        """
        z = 1.0 if medium is None else medium.impedance_ratio
        scale = max(
            np.max(np.linalg.norm(self.E, axis=1), initial=0.0),
            np.max(np.linalg.norm(self.H, axis=1), initial=0.0),
            1e-300,
        )
        tang_e = np.max(np.abs(bdot(self.grid, self.E))) / scale
        tang_h = np.max(np.abs(bdot(self.grid, self.H))) / scale
        cross_h = np.max(np.linalg.norm(self.H - z * np.cross(self.grid, self.E), axis=1)) / scale
        cross_e = np.max(np.linalg.norm(self.E + np.cross(self.grid, self.H) / z, axis=1)) / scale
        return {
            "tangential_E": float(tang_e),
            "tangential_H": float(tang_h),
            "cross_H_from_E": float(cross_h),
            "cross_E_from_H": float(cross_e),
        }


def far_field(
    source: CurrentSource,
    medium: Medium,
    grid: Optional[np.ndarray] = None,
    order_scale: float = 1.0,
) -> FarFieldPattern:
    """Far-field pattern of a current pair on a sphere grid."""
    if grid is None:
        grid = default_sphere_grid()
    grid = np.asarray(grid, dtype=float)
    pts, w = source.quadrature(medium, order_scale)
    j1 = np.asarray(source.j1(pts), dtype=complex)
    j2 = np.asarray(source.j2(pts), dtype=complex)
    k = medium.k
    phases = np.exp(-1j * k * (grid @ pts.T)) * w[None, :]
    j1hat = phases @ j1
    j2hat = phases @ j2
    return _pattern_from_moments(grid, j1hat, j2hat, medium)


def _pattern_from_moments(grid, j1hat, j2hat, medium: Medium) -> FarFieldPattern:
    k, omega = medium.k, medium.omega
    rad_j2 = bdot(grid, j2hat)
    rad_j1 = bdot(grid, j1hat)
    E = (
        1j * omega * medium.mu0 * (j2hat - rad_j2[:, None] * grid)
        + 1j * k * np.cross(grid, j1hat)
    ) / (4.0 * np.pi)
    H = (
        -1j * omega * medium.eps0 * (j1hat - rad_j1[:, None] * grid)
        + 1j * k * np.cross(grid, j2hat)
    ) / (4.0 * np.pi)
    return FarFieldPattern(grid=grid, E=E, H=H)


def dipole_far_field_analytic(
    moment,
    position,
    medium: Medium,
    grid: Optional[np.ndarray] = None,
    kind: str = "electric",
) -> FarFieldPattern:
    """Far field of a point current m delta(y - position).

    kind 'electric' places the moment in the curl-H equation (j2 slot),
    'magnetic' in the curl-E equation (j1 slot).  Position shifts multiply
    the pattern by e^{-i k xhat . position}.
    """
    if grid is None:
        grid = default_sphere_grid()
    grid = np.asarray(grid, dtype=float)
    m = np.asarray(moment, dtype=complex)
    pos = np.asarray(position, dtype=float)
    shift = np.exp(-1j * medium.k * (grid @ pos))
    mhat = shift[:, None] * m[None, :]
    zero = np.zeros_like(mhat)
    if kind == "electric":
        return _pattern_from_moments(grid, zero, mhat, medium)
    if kind == "magnetic":
        return _pattern_from_moments(grid, mhat, zero, medium)
    raise ValueError(f"unknown dipole kind {kind!r}")


def far_field_difference(a: FarFieldPattern, b: FarFieldPattern) -> float:
    """Sup over grid nodes of the Euclidean modulus of E_inf difference."""
    if a.grid.shape != b.grid.shape or not np.allclose(a.grid, b.grid, atol=1e-12):
        raise GridMismatch("far-field patterns sampled on different grids")
    return float(np.max(np.linalg.norm(a.E - b.E, axis=1)))


# --------------------------------------------------------------------------
# non-radiating constructions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BumpPotential:
    """Polynomial bump (1 - |x-c|^2/R^2)^m v inside the ball, zero outside.

    Closed-form curl and curl-curl make it an exact building block for
    radiationless pairs; m >= 3 keeps the densities differentiable at the
    ball boundary.
    """

    center: np.ndarray
    radius: float
    m: int
    vector: np.ndarray

    def __init__(self, center, radius, m, vector):
        if m < 3:
            raise ValueError("bump exponent m must be at least 3")
        object.__setattr__(self, "center", np.asarray(center, dtype=float).reshape(3))
        object.__setattr__(self, "radius", float(radius))
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "vector", np.asarray(vector, dtype=complex).reshape(3))

    def _u(self, pts):
        y = np.atleast_2d(pts) - self.center
        return y, np.sum(y * y, axis=1) / self.radius**2

    def __call__(self, pts):
        y, u = self._u(pts)
        g = np.where(u <= 1.0, (1.0 - np.minimum(u, 1.0)) ** self.m, 0.0)
        return g[:, None] * self.vector[None, :]

    def curl(self, pts):
        """curl(g v) = grad g x v with grad g = -(2m/R^2) (1-u)^(m-1) y."""
        y, u = self._u(pts)
        gp = np.where(u <= 1.0, (1.0 - np.minimum(u, 1.0)) ** (self.m - 1), 0.0)
        grad = (-2.0 * self.m / self.radius**2) * gp[:, None] * y
        return np.cross(grad, np.broadcast_to(self.vector, grad.shape))

    def curl_curl(self, pts):
        """curl curl (g v) = H_g v - (Laplacian g) v, all in closed form."""
        y, u = self._u(pts)
        inside = u <= 1.0
        uu = np.minimum(u, 1.0)
        m, R2 = self.m, self.radius**2
        gp = -m * (1.0 - uu) ** (m - 1)
        gpp = m * (m - 1) * (1.0 - uu) ** (m - 2)
        yv = bdot(y, np.broadcast_to(self.vector, y.shape))
        hess_v = (2.0 / R2) * gp[:, None] * np.broadcast_to(self.vector, y.shape) \
            + (4.0 / R2**2) * (gpp * yv)[:, None] * y
        lap = (6.0 / R2) * gp + (4.0 / R2) * uu * gpp
        out = hess_v - lap[:, None] * np.broadcast_to(self.vector, y.shape)
        out[~inside] = 0.0
        return out

    def grad_laplacian_cross(self, pts):
        """curl curl curl (g v) = -grad(Laplacian g) x v."""
        y, u = self._u(pts)
        inside = u <= 1.0
        uu = np.minimum(u, 1.0)
        m, R2 = self.m, self.radius**2
        gpp = m * (m - 1) * (1.0 - uu) ** (m - 2)
        gppp = -m * (m - 1) * (m - 2) * (1.0 - uu) ** (m - 3)
        phi_p = 10.0 * gpp + 4.0 * uu * gppp
        grad_lap = (2.0 / R2**2) * phi_p[:, None] * y
        out = -np.cross(grad_lap, np.broadcast_to(self.vector, y.shape))
        out[~inside] = 0.0
        return out


def _enclosing_ball(potentials) -> BallSupport:
    pots = [p for p in potentials if p is not None]
    centers = np.array([p.center for p in pots])
    center = centers.mean(axis=0)
    radius = max(np.linalg.norm(p.center - center) + p.radius for p in pots)
    return BallSupport(center, 1.05 * radius)


def nonradiating_from_potentials(psi1, psi2, medium: Medium) -> CurrentSource:
    """Radiationless pair J1 = curl psi1 - i omega mu0 psi2, J2 = curl psi2 + i omega eps0 psi1.

    The fields (E, H) = (psi1, psi2) inside the support and zero outside
    solve the radiation problem with these currents, so the far field
    vanishes identically.  Potentials must provide closed-form curls.
    """
    for psi in (psi1, psi2):
        if psi is not None and not hasattr(psi, "curl"):
            raise UnsupportedPotential(f"{type(psi)} provides no closed-form curl")
    if psi1 is None and psi2 is None:
        return CurrentSource(support=BallSupport(np.zeros(3), 1.0), label="zero")
    support = _enclosing_ball([psi1, psi2])
    omega, eps0, mu0 = medium.omega, medium.eps0, medium.mu0

    def j1(pts):
        out = np.zeros((len(np.atleast_2d(pts)), 3), dtype=complex)
        if psi1 is not None:
            out += psi1.curl(pts)
        if psi2 is not None:
            out -= 1j * omega * mu0 * psi2(pts)
        return out

    def j2(pts):
        out = np.zeros((len(np.atleast_2d(pts)), 3), dtype=complex)
        if psi2 is not None:
            out += psi2.curl(pts)
        if psi1 is not None:
            out += 1j * omega * eps0 * psi1(pts)
        return out

    return CurrentSource(support=support, j1=j1, j2=j2, label="nonradiating-potential-pair")


def curl_curl_source(bump: BumpPotential, c0: complex, medium: Medium) -> CurrentSource:
    """Radiationless source whose j2 component is curl curl M + c0 M.

    Realized through the potential pair (psi1, psi2) =
    ((curl curl M + c0 M)/(i omega eps0), 0): then j2 equals the requested
    field exactly and j1 = (curl curl + c0)(curl M)/(i omega eps0) is the
    same combination applied to curl M.  Both slots carry curl-curl-plus-
    constant fields and the pair radiates nothing.
    """
    omega, eps0 = medium.omega, medium.eps0
    support = BallSupport(bump.center, 1.05 * bump.radius)

    def j2(pts):
        return bump.curl_curl(pts) + c0 * bump(pts)

    def j1(pts):
        return (bump.grad_laplacian_cross(pts) + c0 * bump.curl(pts)) / (1j * omega * eps0)

    return CurrentSource(support=support, j1=j1, j2=j2, label="curl-curl-plus-constant")
