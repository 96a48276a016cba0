"""Complex-exponential Maxwell probe fields anchored at a cone edge.

Given a validated cone and a chosen edge w1, a separating direction z (z
orthogonal to w1, strictly negative against every other edge with margin
kappa) defines the probe geometry

    d      = (z - s w1) / sqrt(1 + s^2),      0 < s < s0,
    dperp  = w1 x z,
    rho    = tau d + i sqrt(tau^2 + k^2) dperp,
    p      = dperp - i sqrt(1 + k^2/tau^2) d,

so that e^{rho . x} decays everywhere inside the cone while rho . rho = -k^2.
All identities here use the bilinear (unconjugated) dot product.

The pair V = p e^{rho . x}, W = (1/(i omega mu0)) rho x p e^{rho . x} solves
the homogeneous time-harmonic Maxwell system, as does its dual with the roles
of V and W exchanged; both are exposed as probe-field evaluators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DispersionMismatch,
    SOutOfRange,
    TauBelowK,
    ZeroSource,
)
from .geometry import PolyhedralCone, separating_direction

ELECTRIC_PROBE = "electric-probe"
MAGNETIC_PROBE = "magnetic-probe"

S_GRID_SIZE = 64          # geometric grid used by select_s
S_GRID_SPAN = 1e-3        # lowest grid point as a fraction of s0


def bdot(a, b):
    """Bilinear dot product sum_j a_j b_j without conjugation.

    Works on (..., 3) arrays; this is the product appearing in every probe
    identity and in the reciprocity integrals.
    """
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


def _derive_vectors(w1, z, s, tau, k, dtype):
    """Build (d, dperp, rho, p) from the primitive inputs in a chosen dtype.

    The identities rho . rho = -k^2 and rho x p = -(k^2/tau)(d x dperp)
    involve cancellations conditioned like (tau/k)^2, so callers verifying
    them at large tau/k should request an extended dtype (np.longdouble).
    """
    w1 = np.asarray(w1, dtype=dtype)
    z = np.asarray(z, dtype=dtype)
    s = dtype(s)
    tau = dtype(tau)
    k = dtype(k)
    # normalize in the working dtype: the identities need |d| = |dperp| = 1
    # to the working precision, not merely to the storage precision of z, w1
    d = z - s * w1
    d = d / np.sqrt(np.sum(d * d))
    dperp = np.cross(w1, z)
    dperp = dperp / np.sqrt(np.sum(dperp * dperp))
    cdtype = np.result_type(dtype, np.complex64)
    rho = (tau * d).astype(cdtype) + 1j * np.sqrt(tau * tau + k * k) * dperp
    p = dperp.astype(cdtype) - 1j * np.sqrt(1 + (k / tau) ** 2) * d
    return d, dperp, rho, p


@dataclass(frozen=True)
class CgoParameters:
    """Probe-field parameter bundle for one (cone edge, s, tau, k) choice.

    ``d``, ``dperp``, ``rho``, ``p`` are stored in double precision; use
    :meth:`vectors` to rebuild them in another dtype for high-accuracy
    identity checks.
    """

    k: float
    tau: float
    s: float
    z: np.ndarray
    kappa: float
    w1: np.ndarray
    edge_index: int
    d: np.ndarray
    dperp: np.ndarray
    rho: np.ndarray
    p: np.ndarray

    def vectors(self, dtype=np.float64):
        """(d, dperp, rho, p) recomputed from (w1, z, s, tau, k) in ``dtype``."""
        return _derive_vectors(self.w1, self.z, self.s, self.tau, self.k, dtype)

    @property
    def whole_cone_rate(self) -> float:
        """Decay rate of -d . theta along the slow edge w1: s / sqrt(1 + s^2)."""
        return self.s / np.sqrt(1.0 + self.s * self.s)

    @property
    def residual_cone_rate(self) -> float:
        """Decay rate kappa/2 valid on the cone minus its w1 fan corner."""
        return 0.5 * self.kappa

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "tau": self.tau,
                "s": self.s,
                "z": self.z.tolist(),
                "kappa": self.kappa,
                "w1": self.w1.tolist(),
                "edge_index": self.edge_index,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "CgoParameters":
        rec = json.loads(text)
        d, dperp, rho, p = _derive_vectors(
            rec["w1"], rec["z"], rec["s"], rec["tau"], rec["k"], np.float64
        )
        return cls(
            k=rec["k"], tau=rec["tau"], s=rec["s"],
            z=np.asarray(rec["z"], dtype=float), kappa=rec["kappa"],
            w1=np.asarray(rec["w1"], dtype=float), edge_index=rec["edge_index"],
            d=d, dperp=dperp, rho=rho, p=p,
        )


def s_upper_bound(cone: PolyhedralCone, edge_index: int) -> float:
    """Admissible upper bound s0 = min(kappa/3, |det[w1 w2 w3]| kappa^3 / (128 pi)).

    w2 and w3 are the fan neighbors of w1; kappa comes from the separating
    direction.  Every s in (0, s0) keeps the three-edge corner integral
    dominant over the rest of the cone.
    """
    _, kappa, _ = edge_frame(cone, edge_index)
    det = _neighbor_triple(cone, edge_index)
    return min(kappa / 3.0, det * kappa**3 / (128.0 * np.pi))


def edge_frame(cone: PolyhedralCone, edge_index: int):
    """(z, kappa, w1) for the chosen edge."""
    z, kappa = separating_direction(cone, edge_index)
    return z, kappa, cone.edges[edge_index]


def _neighbor_triple(cone: PolyhedralCone, edge_index: int) -> float:
    j, l = cone.neighbors(edge_index)
    W = np.stack([cone.edges[edge_index], cone.edges[j], cone.edges[l]])
    return abs(float(np.linalg.det(W)))


def build_cgo(
    cone: PolyhedralCone,
    edge_index: int,
    k: float,
    tau: float,
    s: float,
) -> CgoParameters:
    """Construct probe parameters; requires 0 < s < s0 and tau >= k > 0."""
    if not (k > 0.0 and tau >= k):
        raise TauBelowK(f"need tau >= k > 0, got tau = {tau}, k = {k}")
    z, kappa, w1 = edge_frame(cone, edge_index)
    s0 = min(kappa / 3.0, _neighbor_triple(cone, edge_index) * kappa**3 / (128.0 * np.pi))
    if not (0.0 < s < s0):
        raise SOutOfRange(f"s = {s} outside (0, {s0:.6e})")
    d, dperp, rho, p = _derive_vectors(w1, z, s, tau, k, np.float64)
    return CgoParameters(
        k=float(k), tau=float(tau), s=float(s), z=z, kappa=float(kappa),
        w1=w1.copy(), edge_index=int(edge_index),
        d=d, dperp=dperp, rho=rho, p=p,
    )


def select_s(F0, cone: PolyhedralCone, edge_index: int, k: float):
    """Pick s in (0, s0) making the limiting coupling F0 . p as large as possible.

    F0 decomposes in the orthonormal frame (w1, z, dperp) as b1 w1 + b2 z +
    b3 dperp, and the tau -> infinity limit of F0 . p equals
    b3 + i (s b1 - b2)/sqrt(1 + s^2).  The magnitude is maximized over a
    geometric grid of 64 samples; returns (s, limit value at that s).
    """
    F0 = np.asarray(F0, dtype=complex)
    if np.linalg.norm(F0) <= 1e-14:
        raise ZeroSource("F0 vanishes; no coupling to select s for")
    z, kappa, w1 = edge_frame(cone, edge_index)
    dperp = np.cross(w1, z)
    b1, b2, b3 = F0 @ w1, F0 @ z, F0 @ dperp
    s0 = s_upper_bound(cone, edge_index)
    top = s0 * (1.0 - 1e-3)
    grid = top * (S_GRID_SPAN ** (np.arange(S_GRID_SIZE)[::-1] / (S_GRID_SIZE - 1)))
    limits = b3 + 1j * (grid * b1 - b2) / np.sqrt(1.0 + grid**2)
    i = int(np.argmax(np.abs(limits)))
    return float(grid[i]), complex(limits[i])


@dataclass(frozen=True)
class CgoFieldPair:
    """Evaluators for a homogeneous Maxwell pair (V, W) built from probe data.

    electric-probe:  V = p e^{rho . x},                      W = (rho x p)/(i omega mu0) e^{rho . x}
    magnetic-probe:  V = -(rho x p)/(i omega eps0) e^{rho . x},  W = p e^{rho . x}

    Both modes satisfy curl V - i omega mu0 W = 0 and curl W + i omega eps0 V = 0.
    """

    params: CgoParameters
    omega: float
    eps0: float
    mu0: float
    mode: str

    def __post_init__(self):
        if self.mode not in (ELECTRIC_PROBE, MAGNETIC_PROBE):
            raise ValueError(f"unknown probe mode {self.mode!r}")

    @property
    def rho(self) -> np.ndarray:
        return self.params.rho

    @property
    def _amplitudes(self):
        rho, p = self.params.rho, self.params.p
        rxp = np.cross(rho, p)
        if self.mode == ELECTRIC_PROBE:
            return p, rxp / (1j * self.omega * self.mu0)
        return -rxp / (1j * self.omega * self.eps0), p

    def _phase(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.exp(x @ self.params.rho)

    def V(self, x) -> np.ndarray:
        """Electric test field at points x of shape (3,) or (m, 3)."""
        a, _ = self._amplitudes
        out = self._phase(x)[:, None] * a[None, :]
        return out[0] if np.asarray(x).ndim == 1 else out

    def W(self, x) -> np.ndarray:
        """Magnetic test field at points x of shape (3,) or (m, 3)."""
        _, b = self._amplitudes
        out = self._phase(x)[:, None] * b[None, :]
        return out[0] if np.asarray(x).ndim == 1 else out


def cgo_fields(
    params: CgoParameters,
    omega: float,
    eps0: float,
    mu0: float,
    mode: str = ELECTRIC_PROBE,
) -> CgoFieldPair:
    """Probe-field pair for a medium; enforces k^2 = omega^2 eps0 mu0."""
    k2 = omega * omega * eps0 * mu0
    if abs(k2 - params.k**2) > 1e-12 * max(k2, params.k**2):
        raise DispersionMismatch(
            f"k^2 = {params.k ** 2} but omega^2 eps0 mu0 = {k2}"
        )
    return CgoFieldPair(params=params, omega=omega, eps0=eps0, mu0=mu0, mode=mode)


@dataclass(frozen=True)
class PlaneWavePair:
    """Propagating plane-wave Maxwell pair; a second family of test fields.

    V = q e^{i k khat . x} with transverse q, W = (k/(omega mu0)) khat x V.
    """

    q: np.ndarray
    khat: np.ndarray
    k: float
    omega: float
    eps0: float
    mu0: float

    def __post_init__(self):
        khat = np.asarray(self.khat, dtype=float)
        q = np.asarray(self.q, dtype=complex)
        if abs(np.linalg.norm(khat) - 1.0) > 1e-10:
            raise ValueError("khat must be a unit vector")
        if abs(q @ khat) > 1e-10 * np.linalg.norm(q):
            raise ValueError("polarization must be transverse to khat")
        k2 = self.omega**2 * self.eps0 * self.mu0
        if abs(k2 - self.k**2) > 1e-12 * max(k2, self.k**2):
            raise DispersionMismatch("plane-wave k does not match the medium")

    def _phase(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.exp(1j * self.k * (x @ self.khat))

    def V(self, x) -> np.ndarray:
        out = self._phase(x)[:, None] * np.asarray(self.q, dtype=complex)[None, :]
        return out[0] if np.asarray(x).ndim == 1 else out

    def W(self, x) -> np.ndarray:
        amp = (self.k / (self.omega * self.mu0)) * np.cross(self.khat, self.q)
        out = self._phase(x)[:, None] * amp[None, :]
        return out[0] if np.asarray(x).ndim == 1 else out
