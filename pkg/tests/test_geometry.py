import numpy as np
import pytest

from cornerfield.errors import (
    DegenerateCone,
    NotStrictlyConvex,
    RedundantEdge,
    TooFewEdges,
)
from cornerfield.geometry import (
    PolyhedralCone,
    SimplicialCone,
    TruncatedCone,
    contains,
    contains_many,
    cone_coordinates,
    fan_from,
    patch_min_decay,
    polygon_solid_angle_excess,
    random_cone,
    separating_direction,
    simplicial_fan,
    spherical_patch,
    spherical_triangle_solid_angle,
    validate_cone,
)

from oracles import (
    face_normal_contains,
    grid_separating_direction,
    in_conical_hull_lp,
    mc_solid_angle,
    random_rotation,
)


class TestValidateCone:
    def test_octant_pointedness(self):
        rep = validate_cone(np.eye(3))
        assert rep.pointedness == pytest.approx(1.0 / np.sqrt(3.0), abs=1e-12)
        assert np.allclose(rep.witness, np.ones(3) / np.sqrt(3.0), atol=1e-10)
        assert rep.min_triple_product == pytest.approx(1.0)

    def test_opening_angle_pi_rejected(self):
        edges = np.array([[1.0, 0, 0], [0, 1.0, 0], [-1.0, 0, 0]])
        with pytest.raises(NotStrictlyConvex):
            validate_cone(edges)

    def test_too_few_edges(self):
        with pytest.raises(TooFewEdges):
            validate_cone(np.eye(3)[:2])

    def test_coplanar_triple_rejected(self):
        v = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
        edges = np.vstack([np.eye(3)[:2], v, [0.0, 0.0, 1.0]])
        # (e1, e2, v) coplanar but the cone is pointed
        with pytest.raises((DegenerateCone, RedundantEdge)):
            validate_cone(edges)

    def test_fourth_edge_extremality_decided_by_hull(self):
        """Tilting (1,1,0)/sqrt(2) into the octant makes it redundant,
        tilting it out makes it a genuine fourth edge; cross-check by LP."""
        eps = 0.05
        inward = np.array([1.0, 1.0, eps])
        inward /= np.linalg.norm(inward)
        outward = np.array([1.0, 1.0, -eps])
        outward /= np.linalg.norm(outward)

        assert in_conical_hull_lp(np.eye(3), inward)
        with pytest.raises(RedundantEdge):
            validate_cone(np.vstack([np.eye(3), inward]))

        assert not in_conical_hull_lp(np.eye(3), outward)
        rep = validate_cone(np.vstack([np.eye(3), outward]))
        assert rep.n_edges == 4
        for j, edge in enumerate(np.vstack([np.eye(3), outward])):
            others = np.delete(np.vstack([np.eye(3), outward]), j, axis=0)
            assert not in_conical_hull_lp(others, edge)

    def test_rotation_invariance(self, skew3, rng):
        rep = validate_cone(skew3.edges)
        _, kappa = separating_direction(skew3, 1)
        for _ in range(5):
            Q = random_rotation(rng)
            rot = PolyhedralCone(np.zeros(3), skew3.edges @ Q.T)
            rep_rot = validate_cone(rot.edges)
            _, kappa_rot = separating_direction(rot, 1)
            assert abs(rep_rot.pointedness - rep.pointedness) < 1e-10
            assert abs(kappa_rot - kappa) < 1e-10

    def test_witness_sees_all_edges(self, pentacone):
        rep = pentacone.report
        assert np.all(pentacone.edges @ rep.witness >= rep.pointedness - 1e-12)


class TestSimplicialFan:
    def test_three_edges_single_cell(self, skew3):
        cells = simplicial_fan(skew3)
        assert len(cells) == 1
        assert np.allclose(np.sort(cells[0].edges, axis=0), np.sort(skew3.edges, axis=0))

    def test_four_edge_solid_angles_sum(self, pyramid4, rng):
        cells = simplicial_fan(pyramid4)
        assert len(cells) == 2
        total = sum(spherical_triangle_solid_angle(*c.edges) for c in cells)
        mc, err = mc_solid_angle(pyramid4, 1_000_000, rng)
        assert abs(total - mc) < 5.0 * err

    def test_five_edge_partition(self, pentacone, rng):
        cells = simplicial_fan(pentacone)
        assert len(cells) == 3
        pts = rng.normal(size=(10_000, 3))
        inside_cone = face_normal_contains(pentacone, pts)
        cell_hits = np.zeros(len(pts), dtype=int)
        for sc in cells:
            c = np.linalg.solve(sc.edges.T, pts.T)
            cell_hits += np.all(c > 1e-12, axis=0).astype(int)
        # interior points lie in exactly one open cell, up to the measure-zero
        # cell boundaries which the strict inequality excludes
        on_boundary = cell_hits != inside_cone.astype(int)
        assert on_boundary.mean() < 0.01
        assert np.all(cell_hits <= 1)

    def test_fan_root_choice_covers_same_cone(self, pyramid4, rng):
        pts = rng.normal(size=(2000, 3))
        base = contains_many(pyramid4, pts)
        for root in range(4):
            cells = fan_from(pyramid4, root)
            hit = np.zeros(len(pts), dtype=bool)
            for sc in cells:
                c = np.linalg.solve(sc.edges.T, pts.T)
                hit |= np.all(c > 0, axis=0)
            mismatch = hit != base
            assert mismatch.mean() < 0.002  # fan boundaries only


class TestSeparatingDirection:
    def test_octant_edge0(self, octant):
        z, kappa = separating_direction(octant, 0)
        assert kappa == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-12)
        assert np.allclose(z, -np.array([0, 1, 1]) / np.sqrt(2.0), atol=1e-9)
        assert abs(z @ octant.edges[0]) < 1e-12

    def test_octant_edge1_symmetry(self, octant):
        z, kappa = separating_direction(octant, 1)
        assert kappa == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-12)
        assert np.allclose(z, -np.array([1, 0, 1]) / np.sqrt(2.0), atol=1e-9)

    def test_matches_grid_oracle(self, skew3, pyramid4, pentacone):
        for cone in (skew3, pyramid4, pentacone):
            for j in range(cone.n_edges):
                z, kappa = separating_direction(cone, j)
                z_o, kappa_o = grid_separating_direction(cone, j)
                assert kappa == pytest.approx(kappa_o, abs=1e-9)
                assert abs(z @ cone.edges[j]) < 1e-12

    def test_needle_cone(self, rng):
        axis = np.array([0.0, 0.0, 1.0])
        polar = np.deg2rad([2.0, 4.0, 5.0])
        az = np.deg2rad([0.0, 120.0, 250.0])
        edges = np.stack(
            [np.sin(polar) * np.cos(az), np.sin(polar) * np.sin(az), np.cos(polar)],
            axis=1,
        )
        cone = PolyhedralCone(np.zeros(3), edges)
        for j in range(3):
            z, kappa = separating_direction(cone, j)
            _, kappa_o = grid_separating_direction(cone, j)
            assert kappa > 0.0
            assert kappa == pytest.approx(kappa_o, abs=1e-9)
            # margins live on the scale of pairwise edge angles
            assert kappa < np.sin(np.deg2rad(10.0))


class TestContains:
    def test_octant_trivial(self, octant):
        assert contains(octant, [1.0, 1.0, 1.0])
        assert not contains(octant, [-1.0, 1.0, 1.0])

    def test_boundary_is_outside(self, octant):
        assert not contains(octant, [1.0, 1.0, 0.0])
        assert not contains(octant, [0.0, 0.0, 0.0])

    def test_agrees_with_face_normal_oracle(self, pyramid4, rng):
        pts = rng.normal(size=(10_000, 3)) + pyramid4.apex
        mine = contains_many(pyramid4, pts)
        oracle = face_normal_contains(pyramid4, pts)
        assert np.mean(mine != oracle) < 1e-3  # open-set boundaries only
        interior = np.linalg.norm(pts, axis=1) > 1e-6
        strict = mine & oracle
        assert np.array_equal(mine[interior] & ~oracle[interior],
                              np.zeros(interior.sum(), dtype=bool)) or strict.any()

    def test_translated_apex(self, skew3):
        apex = np.array([1.0, -2.0, 0.5])
        moved = PolyhedralCone(apex, skew3.edges)
        x = apex + skew3.edges.sum(axis=0)
        assert contains(moved, x)
        assert not contains(moved, apex - skew3.witness)


class TestSphericalPatch:
    def test_octant_solid_angle(self, octant):
        patch = spherical_patch(octant)
        assert patch.solid_angle == pytest.approx(np.pi / 2.0, abs=1e-12)

    def test_half_octant_vs_monte_carlo(self, rng):
        v = np.array([1.0, 0.0, 1.0]) / np.sqrt(2.0)
        cone = PolyhedralCone(np.zeros(3), np.vstack([np.eye(3)[:2], v]))
        patch = spherical_patch(cone)
        mc, err = mc_solid_angle(cone, 2_000_000, rng)
        assert abs(patch.solid_angle - mc) / patch.solid_angle < 1e-2
        assert abs(patch.solid_angle - mc) < 5.0 * err

    def test_pyramid_cap_bound(self, rng):
        t = np.deg2rad(30.0)
        edges = np.array(
            [
                [np.sin(t), 0, np.cos(t)],
                [0, np.sin(t), np.cos(t)],
                [-np.sin(t), 0, np.cos(t)],
                [0, -np.sin(t), np.cos(t)],
            ]
        )
        cone = PolyhedralCone(np.zeros(3), edges)
        patch = spherical_patch(cone)
        cap = 2.0 * np.pi * (1.0 - np.cos(t))
        assert patch.solid_angle < cap
        mc, err = mc_solid_angle(cone, 1_000_000, rng)
        assert abs(patch.solid_angle - mc) < 5.0 * err

    def test_cells_sum_to_excess_formula(self, pentacone, pyramid4, skew3):
        for cone in (pentacone, pyramid4, skew3):
            patch = spherical_patch(cone)
            excess = polygon_solid_angle_excess(patch.vertices)
            assert abs(patch.cell_solid_angles.sum() - excess) < 1e-10
            assert np.all(patch.cell_solid_angles > 0.0)


class TestPatchMinDecay:
    def test_octant_witness_direction(self, octant):
        # -u has decay rate u . theta, minimized at the patch vertices
        u = octant.witness
        rate = patch_min_decay(octant, -u)
        assert rate == pytest.approx(1.0 / np.sqrt(3.0), abs=1e-12)

    def test_sampled_lower_bound(self, pyramid4, rng):
        d = -pyramid4.witness + 0.3 * np.array([0.2, -0.1, 0.0])
        rate = patch_min_decay(pyramid4, d)
        dirs = rng.normal(size=(20_000, 3))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        dirs = dirs[face_normal_contains(pyramid4, dirs)]
        sampled = -(dirs @ d)
        assert sampled.min() >= rate - 1e-9

    def test_arc_interior_minimum(self, octant):
        # direction aligned against one face: the minimum sits inside an arc
        d = -np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
        rate = patch_min_decay(octant, d)
        assert rate == pytest.approx(0.0, abs=1e-12)


class TestTypes:
    def test_truncated_cone_radius_positive(self, octant):
        with pytest.raises(ValueError):
            TruncatedCone(octant, 0.0)

    def test_simplicial_cone_degenerate(self):
        with pytest.raises(DegenerateCone):
            SimplicialCone(np.zeros(3), np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float))

    def test_cone_json_roundtrip(self, pentacone):
        text = pentacone.to_json()
        back = PolyhedralCone.from_json(text)
        assert np.allclose(back.edges, pentacone.edges)
        assert np.allclose(back.apex, pentacone.apex)

    def test_json_renormalization_warns(self):
        import json

        data = json.dumps({"apex": [0, 0, 0], "edges": [[2, 0, 0], [0, 1, 0], [0, 0, 1]]})
        with pytest.warns(UserWarning):
            cone = PolyhedralCone.from_json(data)
        assert np.allclose(np.linalg.norm(cone.edges, axis=1), 1.0)

    def test_random_cone_generator_valid(self, rng):
        for n in (3, 4, 5):
            cone = random_cone(rng, n)
            assert cone.n_edges == n
            assert cone.report.pointedness > 0

    def test_cone_coordinates_roundtrip(self, skew3, rng):
        sc = simplicial_fan(skew3)[0]
        c = rng.uniform(0.1, 2.0, size=3)
        x = sc.apex + c @ sc.edges
        assert np.allclose(cone_coordinates(sc, x), c, atol=1e-12)
