import numpy as np
import pytest

from cornerfield.cgo import build_cgo, s_upper_bound
from cornerfield.errors import NoConvergence, NonConvergent
from cornerfield.geometry import (
    PolyhedralCone,
    SimplicialCone,
    TruncatedCone,
    fan_from,
    patch_min_decay,
    separating_direction,
    simplicial_fan,
    spherical_patch,
)
from cornerfield.integrals import (
    build_rule,
    exact_exponential_integral,
    exponential_integral,
    holder_envelope_constant,
    holder_weighted,
    pure_exponential,
    tail_bound,
    truncated_integral,
    vector_dotted,
)

from oracles import (
    exponential_integral_quadpack,
    loglog_slope,
    truncated_octant_tensor,
)


class TestExactExponential:
    def test_octant_separable_unit(self, octant):
        sc = simplicial_fan(octant)[0]
        assert exact_exponential_integral(sc, [-1.0, -1.0, -1.0]) == pytest.approx(1.0)

    def test_octant_separable_half(self, octant):
        sc = simplicial_fan(octant)[0]
        assert exact_exponential_integral(sc, [-2.0, -1.0, -1.0]) == pytest.approx(0.5)

    def test_skew_cell_vs_quadpack(self):
        v3 = np.array([1.0, 1.0, np.sqrt(2.0)]) / 2.0
        sc = SimplicialCone(np.zeros(3), np.vstack([np.eye(3)[:2], v3]))
        rho = np.array([-1.0, -1.0, -2.0 + 0.5j])
        mine = exact_exponential_integral(sc, rho)
        oracle = exponential_integral_quadpack(sc.edges, rho)
        assert abs(mine - oracle) / abs(mine) < 1e-9

    def test_divergent_exponent_rejected(self, octant):
        sc = simplicial_fan(octant)[0]
        with pytest.raises(NonConvergent):
            exact_exponential_integral(sc, [0.5, -1.0, -1.0])

    def test_apex_translation_phase(self):
        apex = np.array([0.3, -0.2, 0.7])
        sc0 = SimplicialCone(np.zeros(3), np.eye(3))
        sc1 = SimplicialCone(apex, np.eye(3))
        rho = np.array([-1.0, -2.0, -1.5 + 0.3j])
        v0 = exact_exponential_integral(sc0, rho)
        v1 = exact_exponential_integral(sc1, rho)
        assert v1 == pytest.approx(v0 * np.exp(rho @ apex), rel=1e-13)


class TestExponentialIntegral:
    def test_three_edge_equals_cell(self, skew3):
        rho = np.array([-2.0, -1.0, -3.0 + 1.0j])
        # rotate rho to decay inside the skewed cone
        rho = -3.0 * skew3.witness + 0.4j * np.array([1.0, -1.0, 0.0])
        total = exponential_integral(skew3, rho)
        cell = exact_exponential_integral(simplicial_fan(skew3)[0], rho)
        assert total == pytest.approx(cell, rel=1e-14)

    def test_fan_independence(self, pyramid4, pentacone):
        for cone in (pyramid4, pentacone):
            rho = -2.5 * cone.witness + 0.8j * np.array([0.3, -0.5, 0.1])
            values = []
            for root in range(cone.n_edges):
                cells = fan_from(cone, root)
                values.append(sum(exact_exponential_integral(sc, rho) for sc in cells))
            for v in values[1:]:
                assert abs(v - values[0]) / abs(values[0]) < 1e-12

    def test_cgo_lower_bound_sweep(self, pyramid4):
        """tau^3 |integral| stays above 16 pi / kappa^3 for every tau in [k, 1000k]."""
        k = 1.0
        edge = 2
        _, kappa = separating_direction(pyramid4, edge)
        s0 = s_upper_bound(pyramid4, edge)
        for tau in k * 1000.0 ** (np.arange(7) / 6.0):
            cg = build_cgo(pyramid4, edge, k=k, tau=float(tau), s=0.5 * s0)
            val = abs(exponential_integral(pyramid4, cg.rho)) * tau**3
            assert val > 16.0 * np.pi / kappa**3

    def test_translation_covariance(self, skew3):
        apex = np.array([0.1, 0.2, -0.4])
        moved = PolyhedralCone(apex, skew3.edges)
        rho = -2.0 * skew3.witness + 0.5j * np.array([0.0, 1.0, 0.0])
        v0 = exponential_integral(skew3, rho)
        v1 = exponential_integral(moved, rho)
        assert v1 == pytest.approx(v0 * np.exp(rho @ apex), rel=1e-13)


class TestTruncatedIntegral:
    def test_constant_gives_volume(self, pyramid4):
        tc = TruncatedCone(pyramid4, 2.5)
        spec = vector_dotted(scalar=lambda pts, r, theta: np.ones(len(pts), dtype=complex))
        val = truncated_integral(tc, spec, rtol=1e-10)
        exact = spherical_patch(pyramid4).solid_angle * 2.5**3 / 3.0
        assert val.real == pytest.approx(exact, rel=1e-10)
        assert abs(val.imag) < 1e-12 * exact

    def test_rule_volume_invariant(self, pentacone):
        tc = TruncatedCone(pentacone, 1.7)
        rule = build_rule(tc, n_ang=6, n_rad=8)
        exact = spherical_patch(pentacone).solid_angle * 1.7**3 / 3.0
        assert rule.volume() == pytest.approx(exact, rel=1e-10)
        for theta, wt in rule.cells:
            assert np.all(wt > 0.0)
        assert np.all(rule.radial_weights > 0.0)

    def test_pure_exponential_matches_closed_form(self, octant):
        """Large r0 pushes the truncation tail below 1e-10 of the value."""
        k = 1.0
        tau = 30.0
        s0 = s_upper_bound(octant, 0)
        cg = build_cgo(octant, 0, k=k, tau=tau, s=0.5 * s0)
        rate = patch_min_decay(octant, cg.d)
        r0 = 4000.0
        bound = tail_bound(octant, r0, tau, 2.0 * rate)
        closed = exponential_integral(octant, cg.rho)
        assert bound < 1e-10 * abs(closed)
        tc = TruncatedCone(octant, r0)
        quad = truncated_integral(tc, pure_exponential(cg.rho), rtol=1e-8)
        assert abs(quad - closed) / abs(closed) < 1e-6

    def test_brute_force_octant_vector_dotted(self, octant):
        """Independent polar-coordinate tensor grid on a mild integrand."""
        tc = TruncatedCone(octant, 1.0)
        rho = np.array([-1.0 + 0.5j, -2.0, -1.5 - 0.25j])

        def f(pts):
            return np.exp(pts @ rho) * (1.0 + pts[:, 0])

        spec = vector_dotted(
            scalar=lambda pts, r, theta: np.exp(pts @ rho) * (1.0 + pts[:, 0]),
            guide=np.real(rho),
        )
        mine = truncated_integral(tc, spec, rtol=1e-10)
        oracle = truncated_octant_tensor(f, 1.0, n=90)
        assert abs(mine - oracle) / abs(oracle) < 1e-9

    def test_holder_slope_strong_direction(self, octant):
        """log-log slope of the Holder-weighted integral is -(3 + alpha)."""
        alpha = 0.5
        d = -octant.witness
        taus = np.array([10.0, 20.0, 40.0, 80.0])
        tc = TruncatedCone(octant, 2.0)
        vals = [
            truncated_integral(tc, holder_weighted(alpha, d, float(t)), rtol=1e-9)
            for t in taus
        ]
        slope = loglog_slope(taus, vals)
        assert abs(slope + (3.0 + alpha)) < 0.15

    def test_constant_slope_strong_direction(self, skew3):
        d = -skew3.witness
        taus = np.array([10.0, 20.0, 40.0, 80.0])
        tc = TruncatedCone(skew3, 2.0)
        vals = [
            truncated_integral(tc, pure_exponential(float(t) * d), rtol=1e-9)
            for t in taus
        ]
        slope = loglog_slope(taus, vals)
        assert abs(slope + 3.0) < 0.15

    def test_no_convergence_is_loud(self, octant):
        tc = TruncatedCone(octant, 1.0)
        spec = pure_exponential(np.array([0.0, 0.0, 200.0j]))
        rule = build_rule(tc, n_ang=2, n_rad=2)
        with pytest.raises(NoConvergence):
            truncated_integral(tc, spec, rule=rule, rtol=1e-14, max_doublings=1)

    def test_holder_alpha_range_enforced(self):
        with pytest.raises(ValueError):
            holder_weighted(1.5, np.array([0, 0, -1.0]), 5.0)
        with pytest.raises(ValueError):
            holder_weighted(0.0, np.array([0, 0, -1.0]), 5.0)


class TestTailBound:
    def test_upper_bounds_truncation_gap(self, rng):
        """|closed - quadrature| <= tail bound on random strong-decay configs."""
        from cornerfield.geometry import random_cone

        for trial in range(5):
            cone = random_cone(rng, int(rng.choice([3, 4])))
            tau = float(rng.uniform(5.0, 20.0))
            mix = rng.dirichlet(np.ones(cone.n_edges)) @ cone.edges
            v = -(0.7 * cone.witness + 0.3 * mix / np.linalg.norm(mix))
            rho = tau * v + 1j * tau * rng.uniform(0.2, 0.7) * np.cross(cone.witness, cone.edges[0])
            rate = patch_min_decay(cone, np.real(rho)) / tau
            assert rate > 0
            r0 = float(rng.uniform(1.0, 2.5))
            closed = exponential_integral(cone, rho)
            quad = truncated_integral(TruncatedCone(cone, r0), pure_exponential(rho), rtol=1e-9)
            bound = tail_bound(cone, r0, tau, 2.0 * rate)
            assert abs(closed - quad) <= bound + 1e-12 * abs(closed)

    def test_monotone_in_tau(self, octant):
        vals = [tail_bound(octant, 1.0, tau, 0.8) for tau in (1.0, 2.0, 5.0, 20.0, 100.0)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1e-10 * vals[0]

    def test_doubling_r0_gains_exponential_factor(self, octant):
        # the polynomial prefactor at most quadruples, so doubling r0 wins
        # the factor e^{-c tau r0} up to that constant
        tau, kappa = 10.0, 0.8
        c = 0.5 * kappa * tau
        b1 = tail_bound(octant, 1.0, tau, kappa)
        b2 = tail_bound(octant, 2.0, tau, kappa)
        assert b2 <= 4.0 * b1 * np.exp(-c * 1.0)
        assert b2 < b1


class TestHolderEnvelope:
    def test_alpha_zero_limit(self):
        # Gamma(3) = 2 gives 32 pi / kappa^3 as alpha -> 0
        kappa = 0.7
        val = holder_envelope_constant(kappa, 1e-12)
        assert val == pytest.approx(32.0 * np.pi / kappa**3, rel=1e-9)

    def test_kappa2_alpha_half(self):
        from scipy.special import gamma

        val = holder_envelope_constant(2.0, 0.5)
        assert val == pytest.approx(2.0 * np.pi * gamma(3.5), rel=1e-14)
        assert val == pytest.approx(2.0 * np.pi * 3.3233509704478426, rel=1e-12)

    def test_kappa_halving_power_law(self):
        alpha = 0.3
        v1 = holder_envelope_constant(1.0, alpha)
        v2 = holder_envelope_constant(0.5, alpha)
        assert v2 / v1 == pytest.approx(2.0 ** (3.0 + alpha), rel=1e-12)

    def test_alpha_domain(self):
        with pytest.raises(ValueError):
            holder_envelope_constant(1.0, 1.0)
