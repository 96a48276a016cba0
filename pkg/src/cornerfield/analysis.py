"""Corner experiments: decay-rate dichotomy, apex classification and recovery.

The central object is the probe functional

    S(tau) = integral over K^{r0} of F1 . W + F2 . V,

with (V, W) the edge-anchored probe pair at decay parameter tau.  In
electric-probe mode V carries the O(1) amplitude p, so a nonvanishing
F2(apex) forces |S(tau)| ~ tau^-3, while F2(apex) = 0 with Holder index
alpha pushes the decay to tau^-(3+alpha); magnetic-probe mode exchanges the
roles and probes F1.  Fitting the log-log slope of a tau sweep therefore
classifies whether the densities vanish at the apex, and the ratio of the
functional to the bare exponential integral recovers the apex coupling
F2(apex) . p by extrapolation.

All functionals are evaluated in apex-relative coordinates (the probe
exponential is anchored at the apex), which changes nothing about decay
rates but keeps the numbers scaled sanely for apexes away from the origin.

Also here: the two reciprocity identities tying volume integrals of a
manufactured source against any homogeneous test pair to boundary data, and
the far-field uniqueness demonstration comparing polyhedral supports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .cgo import (
    ELECTRIC_PROBE,
    MAGNETIC_PROBE,
    CgoParameters,
    bdot,
    build_cgo,
    cgo_fields,
    s_upper_bound,
    select_s,
)
from .errors import BelowNoiseFloor, ExtrapolationUnstable, TooFewPoints
from .geometry import TruncatedCone
from .integrals import truncated_integral, vector_dotted
from .radiation import (
    CurrentSource,
    Medium,
    default_sphere_grid,
    far_field,
    far_field_difference,
)

NOISE_FLOOR = 1e3 * np.finfo(float).eps


# --------------------------------------------------------------------------
# probe functional and tau sweeps
# --------------------------------------------------------------------------

def cgo_functional(
    F1: Optional[Callable],
    F2: Optional[Callable],
    tc: TruncatedCone,
    cgo: CgoParameters,
    medium: Medium,
    mode: str = ELECTRIC_PROBE,
    rtol: float = 1e-6,
) -> complex:
    """integral over K^{r0} of F1 . W + F2 . V with the bilinear dot.

    Densities are evaluated at absolute coordinates; the probe exponential
    is anchored at the cone apex.
    """
    pair = cgo_fields(cgo, medium.omega, medium.eps0, medium.mu0, mode)
    amp_v, amp_w = pair._amplitudes
    rho = cgo.rho

    def scalar(pts, r, theta):
        vals = np.zeros(len(pts), dtype=complex)
        if F1 is not None:
            vals += bdot(np.asarray(F1(pts), dtype=complex), amp_w)
        if F2 is not None:
            vals += bdot(np.asarray(F2(pts), dtype=complex), amp_v)
        return vals * np.exp(r * (theta @ rho))

    spec = vector_dotted(scalar=scalar, guide=cgo.tau * cgo.d)
    return truncated_integral(tc, spec, rtol=rtol)


@dataclass(frozen=True)
class TauSweep:
    """Geometric tau sweep of functional values with per-tau probe data.

    d, dperp and s are shared across the sweep; only rho and p change with
    tau, so ``params`` differ only in their tau-dependent fields.
    """

    taus: np.ndarray
    values: np.ndarray
    params: tuple
    mode: str
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        taus = np.asarray(self.taus, dtype=float)
        if np.any(np.diff(taus) <= 0.0):
            raise ValueError("tau values must be strictly increasing")
        k = self.params[0].k if self.params else None
        if k is not None and taus[0] < k:
            raise ValueError("all tau must be >= k")

    def running_slopes(self) -> np.ndarray:
        lt = np.log(self.taus)
        lv = np.log(np.maximum(np.abs(self.values), 1e-300))
        return np.diff(lv) / np.diff(lt)


def default_taus(k: float, lo_factor: float = 10.0, hi_factor: float = 100.0,
                 n: int = 8) -> np.ndarray:
    """Eight log-spaced tau values over one decade starting at 10 k."""
    return k * lo_factor * (hi_factor / lo_factor) ** (np.arange(n) / (n - 1))


def run_tau_sweep(
    F1: Optional[Callable],
    F2: Optional[Callable],
    tc: TruncatedCone,
    medium: Medium,
    edge_index: int = 0,
    s: Optional[float] = None,
    mode: str = ELECTRIC_PROBE,
    taus: Optional[np.ndarray] = None,
    rtol: float = 1e-6,
) -> TauSweep:
    """Evaluate the probe functional along a tau sweep."""
    k = medium.k
    if taus is None:
        taus = default_taus(k)
    if s is None:
        s = 0.5 * s_upper_bound(tc.cone, edge_index)
    params = []
    values = []
    for tau in taus:
        cg = build_cgo(tc.cone, edge_index, k=k, tau=float(tau), s=s)
        params.append(cg)
        values.append(cgo_functional(F1, F2, tc, cg, medium, mode=mode, rtol=rtol))
    return TauSweep(
        taus=np.asarray(taus, dtype=float),
        values=np.asarray(values, dtype=complex),
        params=tuple(params),
        mode=mode,
        metadata={"edge_index": edge_index, "s": s, "rtol": rtol},
    )


# --------------------------------------------------------------------------
# decay fitting and classification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DecayThresholds:
    """Verdict thresholds for the slope fit (log-scale RMS residual)."""

    delta: float = 0.15       # band |slope + 3| <= delta for apex-nonvanishing
    gamma_gap: float = 0.15   # slope <= -3 - gamma_gap for apex-vanishing
    rfit: float = 0.05        # max RMS residual of the log-log fit


@dataclass(frozen=True)
class DecayReport:
    """Fitted decay rate of a tau sweep and the resulting verdict."""

    slope: Optional[float]
    intercept: Optional[float]
    fit_residual: Optional[float]
    verdict: str
    thresholds: DecayThresholds
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "fit_residual": self.fit_residual,
            "verdict": self.verdict,
            "thresholds": {
                "delta": self.thresholds.delta,
                "gamma_gap": self.thresholds.gamma_gap,
                "rfit": self.thresholds.rfit,
            },
            "note": self.note,
        }


def decay_exponent(sweep: TauSweep, thresholds: DecayThresholds = DecayThresholds()) -> DecayReport:
    """Least-squares fit of log |value| against log tau, with verdict.

    Raises TooFewPoints below 5 sweep points and BelowNoiseFloor when any
    modulus sits under 1000 machine epsilons (relative to the largest).
    """
    taus = np.asarray(sweep.taus, dtype=float)
    vals = np.abs(np.asarray(sweep.values))
    if len(taus) < 5:
        raise TooFewPoints(f"need at least 5 sweep points, got {len(taus)}")
    top = float(vals.max(initial=0.0))
    if top == 0.0 or np.any(vals <= NOISE_FLOOR * max(top, 1.0)):
        raise BelowNoiseFloor("sweep values too small for a meaningful fit")
    lt, lv = np.log(taus), np.log(vals)
    A = np.stack([lt, np.ones_like(lt)], axis=1)
    (slope, intercept), *_ = np.linalg.lstsq(A, lv, rcond=None)
    resid = float(np.sqrt(np.mean((A @ [slope, intercept] - lv) ** 2)))
    if abs(slope + 3.0) <= thresholds.delta and resid < thresholds.rfit:
        verdict = "apex-nonvanishing"
    elif slope <= -3.0 - thresholds.gamma_gap:
        verdict = "apex-vanishing"
    else:
        verdict = "inconclusive"
    return DecayReport(
        slope=float(slope),
        intercept=float(intercept),
        fit_residual=resid,
        verdict=verdict,
        thresholds=thresholds,
    )


@dataclass(frozen=True)
class ClassifierConfig:
    """Knobs for classify_apex; defaults reproduce the standard experiment."""

    thresholds: DecayThresholds = DecayThresholds()
    n_tau: int = 8
    tau_lo_factor: float = 10.0
    tau_hi_factor: float = 100.0
    s: Optional[float] = None            # default: s0/2, or via select_s when hinted
    edge_index: int = 0
    rtol: float = 1e-6


def classify_apex(
    F1: Optional[Callable],
    F2: Optional[Callable],
    tc: TruncatedCone,
    medium: Medium,
    config: ClassifierConfig = ClassifierConfig(),
    constant_hints: Optional[dict] = None,
) -> dict:
    """Run both probe modes; electric probes F2's apex value, magnetic F1's.

    ``constant_hints`` may carry {'electric-probe': F0, 'magnetic-probe': F0}
    putative constant parts; when given, s is chosen by select_s for that
    mode, otherwise s = s0/2.  Identically zero sweeps are reported as
    apex-vanishing with the note 'exact-zero'.
    """
    taus = default_taus(medium.k, config.tau_lo_factor, config.tau_hi_factor, config.n_tau)
    out = {}
    for mode in (ELECTRIC_PROBE, MAGNETIC_PROBE):
        s = config.s
        hint = (constant_hints or {}).get(mode)
        if s is None and hint is not None:
            s, _ = select_s(hint, tc.cone, config.edge_index, medium.k)
        sweep = run_tau_sweep(
            F1, F2, tc, medium,
            edge_index=config.edge_index, s=s, mode=mode, taus=taus,
            rtol=config.rtol,
        )
        try:
            report = decay_exponent(sweep, config.thresholds)
        except BelowNoiseFloor:
            report = DecayReport(
                slope=None, intercept=None, fit_residual=None,
                verdict="apex-vanishing", thresholds=config.thresholds,
                note="exact-zero",
            )
        out[mode] = (report, sweep)
    return out


# --------------------------------------------------------------------------
# apex-value recovery
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ApexEstimate:
    """Extrapolated apex coupling F2(apex) . p_inf with an error bar."""

    value: complex
    error_bar: float
    p_inf: np.ndarray
    taus: np.ndarray
    ratios: np.ndarray
    extrapolants: np.ndarray
    alpha_used: float


def estimate_apex_value(
    F2: Callable,
    tc: TruncatedCone,
    medium: Medium,
    edge_index: int = 0,
    alpha: Optional[float] = None,
    taus: Optional[np.ndarray] = None,
    s: Optional[float] = None,
    rtol: float = 1e-6,
) -> ApexEstimate:
    """Recover F2(apex) . p_inf from per-tau functional ratios.

    r(tau) = integral(F2 . V) / integral(e^{rho . x}) tends to the apex
    coupling as tau grows, with a tau^-alpha Holder remainder; consecutive
    Richardson extrapolants in tau^-alpha remove it.  The error bar is the
    spread of the last two extrapolants.  When alpha is not supplied it is
    fitted from the decay of consecutive ratio differences.
    """
    k = medium.k
    if taus is None:
        taus = default_taus(k)
    taus = np.asarray(taus, dtype=float)
    if len(taus) < 4:
        raise TooFewPoints("apex extrapolation needs at least 4 tau values")
    if s is None:
        s = 0.5 * s_upper_bound(tc.cone, edge_index)
    ratios = []
    cg_last = None
    for tau in taus:
        cg = build_cgo(tc.cone, edge_index, k=k, tau=float(tau), s=s)
        cg_last = cg
        rho = cg.rho
        p = cg.p

        def scalar(pts, r, theta, p=p, rho=rho):
            return bdot(np.asarray(F2(pts), dtype=complex), p) * np.exp(r * (theta @ rho))

        num = truncated_integral(
            tc, vector_dotted(scalar=scalar, guide=cg.tau * cg.d), rtol=rtol
        )
        den = truncated_integral(
            tc,
            vector_dotted(
                scalar=lambda pts, r, theta, rho=rho: np.exp(r * (theta @ rho)),
                guide=cg.tau * cg.d,
            ),
            rtol=rtol,
        )
        ratios.append(num / den)
    ratios = np.asarray(ratios)

    if alpha is None:
        diffs = np.abs(np.diff(ratios))
        good = diffs > 0
        if good.sum() < 3:
            raise ExtrapolationUnstable("ratio differences vanish; cannot fit alpha")
        slope, _ = np.polyfit(np.log(taus[:-1][good]), np.log(diffs[good]), 1)
        alpha_used = float(np.clip(-slope, 0.05, 1.5))
    else:
        alpha_used = float(alpha)

    t = taus ** (-alpha_used)
    extr = (ratios[1:] * t[:-1] - ratios[:-1] * t[1:]) / (t[:-1] - t[1:])
    deltas = np.abs(np.diff(extr))
    if len(deltas) >= 3 and deltas[-1] > 3.0 * deltas[-2] and deltas[-2] > 3.0 * deltas[-3]:
        raise ExtrapolationUnstable(
            f"extrapolant residuals grow: {deltas[-3:].tolist()}"
        )
    p_inf = cg_last.dperp - 1j * cg_last.d
    error = float(deltas[-1]) if len(deltas) else float("inf")
    return ApexEstimate(
        value=complex(extr[-1]),
        error_bar=error,
        p_inf=p_inf,
        taus=taus,
        ratios=ratios,
        extrapolants=extr,
        alpha_used=alpha_used,
    )


# --------------------------------------------------------------------------
# manufactured polynomial Maxwell data and reciprocity
# --------------------------------------------------------------------------

class PolynomialField:
    """Vector field with polynomial components; exact curl by index shifts.

    ``coeffs[c, i, j, k]`` multiplies x^i y^j z^k in component c.  Degrees
    up to the array extent are supported; curls are again PolynomialField
    instances, so manufactured sources carry no differentiation error.
    """

    def __init__(self, coeffs):
        self.coeffs = np.asarray(coeffs, dtype=complex)
        if self.coeffs.ndim != 4 or self.coeffs.shape[0] != 3:
            raise ValueError("coeffs must have shape (3, dx, dy, dz)")

    @classmethod
    def zero(cls, degree: int = 3) -> "PolynomialField":
        n = degree + 1
        return cls(np.zeros((3, n, n, n), dtype=complex))

    @classmethod
    def random(cls, rng: np.random.Generator, degree: int = 3) -> "PolynomialField":
        n = degree + 1
        c = rng.normal(size=(3, n, n, n)) + 1j * rng.normal(size=(3, n, n, n))
        # keep total degree <= degree
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if i + j + k > degree:
                        c[:, i, j, k] = 0.0
        return cls(c)

    def __call__(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        nx, ny, nz = self.coeffs.shape[1:]
        px = pts[:, 0][:, None] ** np.arange(nx)[None, :]
        py = pts[:, 1][:, None] ** np.arange(ny)[None, :]
        pz = pts[:, 2][:, None] ** np.arange(nz)[None, :]
        out = np.einsum("cijk,mi,mj,mk->mc", self.coeffs, px, py, pz)
        return out

    def _d(self, axis: int) -> np.ndarray:
        c = self.coeffs
        n = c.shape[1 + axis]
        mult = np.arange(1, n)
        sl = [slice(None)] * 4
        sl[1 + axis] = slice(1, None)
        shifted = c[tuple(sl)]
        shape = [1, 1, 1, 1]
        shape[1 + axis] = n - 1
        out = np.zeros_like(c)
        sl2 = [slice(None)] * 4
        sl2[1 + axis] = slice(0, n - 1)
        out[tuple(sl2)] = shifted * mult.reshape(shape)
        return out

    def curl(self) -> "PolynomialField":
        d = [self._d(a) for a in range(3)]
        out = np.zeros_like(self.coeffs)
        out[0] = d[1][2] - d[2][1]
        out[1] = d[2][0] - d[0][2]
        out[2] = d[0][1] - d[1][0]
        return PolynomialField(out)


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned box with volume and face quadratures for reciprocity."""

    lo: np.ndarray
    hi: np.ndarray
    n: int = 24

    def __init__(self, lo, hi, n: int = 24):
        object.__setattr__(self, "lo", np.asarray(lo, dtype=float).reshape(3))
        object.__setattr__(self, "hi", np.asarray(hi, dtype=float).reshape(3))
        object.__setattr__(self, "n", int(n))

    def volume_quadrature(self):
        nodes, wts = [], []
        for a, b in zip(self.lo, self.hi):
            x, w = np.polynomial.legendre.leggauss(self.n)
            nodes.append(a + 0.5 * (b - a) * (x + 1.0))
            wts.append(0.5 * (b - a) * w)
        X, Y, Z = np.meshgrid(*nodes, indexing="ij")
        W = wts[0][:, None, None] * wts[1][None, :, None] * wts[2][None, None, :]
        return np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=1), W.ravel()

    def face_quadratures(self):
        """(points, weights, outward normal) per face."""
        faces = []
        x, w = np.polynomial.legendre.leggauss(self.n)
        for axis in range(3):
            t1, t2 = (axis + 1) % 3, (axis + 2) % 3
            a1 = self.lo[t1] + 0.5 * (self.hi[t1] - self.lo[t1]) * (x + 1.0)
            w1 = 0.5 * (self.hi[t1] - self.lo[t1]) * w
            a2 = self.lo[t2] + 0.5 * (self.hi[t2] - self.lo[t2]) * (x + 1.0)
            w2 = 0.5 * (self.hi[t2] - self.lo[t2]) * w
            U, V = np.meshgrid(a1, a2, indexing="ij")
            W2 = (w1[:, None] * w2[None, :]).ravel()
            for side, coord in ((-1.0, self.lo[axis]), (1.0, self.hi[axis])):
                pts = np.zeros((U.size, 3))
                pts[:, axis] = coord
                pts[:, t1] = U.ravel()
                pts[:, t2] = V.ravel()
                nrm = np.zeros(3)
                nrm[axis] = side
                faces.append((pts, W2.copy(), nrm))
        return faces


@dataclass(frozen=True)
class TetDomain:
    """Tetrahedron domain with interior and face quadratures."""

    vertices: np.ndarray
    n: int = 24

    def __init__(self, vertices, n: int = 24):
        V = np.asarray(vertices, dtype=float).reshape(4, 3)
        object.__setattr__(self, "vertices", V)
        object.__setattr__(self, "n", int(n))

    def volume_quadrature(self):
        v0, v1, v2, v3 = self.vertices
        x, w = np.polynomial.legendre.leggauss(self.n)
        x = 0.5 * (x + 1.0)
        w = 0.5 * w
        U, V, W3 = np.meshgrid(x, x, x, indexing="ij")
        WU, WV, WW = np.meshgrid(w, w, w, indexing="ij")
        u, v, ww = U.ravel(), V.ravel(), W3.ravel()
        e1, e2, e3 = v1 - v0, v2 - v1, v3 - v2
        vol6 = abs(float(np.linalg.det(np.stack([e1, e2, e3]))))
        pts = (
            v0[None, :]
            + u[:, None] * e1[None, :]
            + (u * v)[:, None] * e2[None, :]
            + (u * v * ww)[:, None] * e3[None, :]
        )
        return pts, (WU * WV * WW).ravel() * u**2 * v * vol6

    def face_quadratures(self):
        v = self.vertices
        centroid = v.mean(axis=0)
        x, w = np.polynomial.legendre.leggauss(self.n)
        x = 0.5 * (x + 1.0)
        w = 0.5 * w
        A, B = np.meshgrid(x, x, indexing="ij")
        WA, WB = np.meshgrid(w, w, indexing="ij")
        u = A.ravel()
        vv = (B * (1 - A)).ravel()
        wq = (WA * WB * (1 - A)).ravel()
        faces = []
        for tri in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
            p0, p1, p2 = v[list(tri)]
            nrm = np.cross(p1 - p0, p2 - p0)
            area2 = np.linalg.norm(nrm)
            nrm = nrm / area2
            if (p0 - centroid) @ nrm < 0:
                nrm = -nrm
            pts = p0[None, :] + u[:, None] * (p1 - p0)[None, :] + vv[:, None] * (p2 - p0)[None, :]
            faces.append((pts, wq * area2, nrm))
        return faces


def reciprocity_check(
    domain,
    E: PolynomialField,
    H: PolynomialField,
    test_pair,
    medium: Medium,
) -> tuple[float, float]:
    """Residuals of the two volume/boundary reciprocity identities.

    The manufactured pair (E, H) defines J1 = curl E - i omega mu0 H and
    J2 = curl H + i omega eps0 E analytically.  Against any homogeneous test
    pair (V, W):

      (1)  int J1 . W + int J2 . V   = oint W . (nu x E) + oint V . (nu x H)
      (2)  eps0 int J1 . V - mu0 int J2 . W
                                     = eps0 oint V . (nu x E) - mu0 oint W . (nu x H)

    Returns |LHS - RHS| / (|LHS| + |RHS| + floor) for each identity.
    """
    omega, eps0, mu0 = medium.omega, medium.eps0, medium.mu0
    curlE = E.curl()
    curlH = H.curl()

    def J1(pts):
        return curlE(pts) - 1j * omega * mu0 * H(pts)

    def J2(pts):
        return curlH(pts) + 1j * omega * eps0 * E(pts)

    pts, w = domain.volume_quadrature()
    Wv = test_pair.W(pts)
    Vv = test_pair.V(pts)
    i_j1w = np.dot(w, bdot(J1(pts), Wv))
    i_j2v = np.dot(w, bdot(J2(pts), Vv))
    i_j1v = np.dot(w, bdot(J1(pts), Vv))
    i_j2w = np.dot(w, bdot(J2(pts), Wv))

    b_w_nxe = 0.0 + 0.0j
    b_v_nxh = 0.0 + 0.0j
    b_v_nxe = 0.0 + 0.0j
    b_w_nxh = 0.0 + 0.0j
    for fpts, fw, nrm in domain.face_quadratures():
        nxE = np.cross(np.broadcast_to(nrm, (len(fpts), 3)), E(fpts))
        nxH = np.cross(np.broadcast_to(nrm, (len(fpts), 3)), H(fpts))
        Wf = test_pair.W(fpts)
        Vf = test_pair.V(fpts)
        b_w_nxe += np.dot(fw, bdot(Wf, nxE))
        b_v_nxh += np.dot(fw, bdot(Vf, nxH))
        b_v_nxe += np.dot(fw, bdot(Vf, nxE))
        b_w_nxh += np.dot(fw, bdot(Wf, nxH))

    lhs1 = i_j1w + i_j2v
    rhs1 = b_w_nxe + b_v_nxh
    lhs2 = eps0 * i_j1v - mu0 * i_j2w
    rhs2 = eps0 * b_v_nxe - mu0 * b_w_nxh
    floor = 1e-30
    res1 = abs(lhs1 - rhs1) / (abs(lhs1) + abs(rhs1) + floor)
    res2 = abs(lhs2 - rhs2) / (abs(lhs2) + abs(rhs2) + floor)
    return float(res1), float(res2)


# --------------------------------------------------------------------------
# uniqueness demonstration
# --------------------------------------------------------------------------

def uniqueness_demo(
    scene_a: CurrentSource,
    scene_b: CurrentSource,
    medium: Medium,
    grid: Optional[np.ndarray] = None,
    floor: Optional[float] = None,
) -> dict:
    """Compare far fields of two sources against the non-radiating floor.

    verdict 'distinguishable' requires the sup difference to exceed ten
    times the floor; 'indistinguishable' requires it to sit at or below the
    floor; anything between is 'inconclusive'.
    """
    if grid is None:
        grid = default_sphere_grid()
    pat_a = far_field(scene_a, medium, grid)
    pat_b = far_field(scene_b, medium, grid)
    diff = far_field_difference(pat_a, pat_b)
    if floor is None:
        scale = max(scene_a.density_scale(medium), scene_b.density_scale(medium), 1e-300)
        floor = measured_nonradiating_floor(medium, grid) * scale
    if diff >= 10.0 * floor:
        verdict = "distinguishable"
    elif diff <= floor:
        verdict = "indistinguishable"
    else:
        verdict = "inconclusive"
    return {
        "difference": diff,
        "floor": floor,
        "verdict": verdict,
        "sup_a": pat_a.sup_norm(),
        "sup_b": pat_b.sup_norm(),
    }


def measured_nonradiating_floor(medium: Medium, grid: Optional[np.ndarray] = None) -> float:
    """Sup far-field norm of the reference radiationless source, per unit density.

    This is the documented quadrature floor: the pattern of the standard
    bump-potential pair at default orders, divided by its density scale.
    Callers multiply by the density scale of the sources under comparison;
    the floor scales linearly with the potentials by construction.
    """
    from .radiation import BumpPotential, nonradiating_from_potentials

    if grid is None:
        grid = default_sphere_grid()
    scale = 1.0 / medium.k
    bump = BumpPotential(np.zeros(3), scale, 5, np.array([0.0, 0.0, 1.0]))
    src = nonradiating_from_potentials(bump, None, medium)
    pat = far_field(src, medium, grid)
    dens = src.density_scale(medium)
    return pat.sup_norm() / max(dens, 1e-300)
