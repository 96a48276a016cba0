import numpy as np
import pytest

from cornerfield.geometry import PolyhedralCone


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def octant():
    return PolyhedralCone(np.zeros(3), np.eye(3))


@pytest.fixture
def pyramid4():
    """Square-pyramid cone, half angle 40 degrees around e3."""
    t = np.deg2rad(40.0)
    edges = np.array(
        [
            [np.sin(t), 0.0, np.cos(t)],
            [0.0, np.sin(t), np.cos(t)],
            [-np.sin(t), 0.0, np.cos(t)],
            [0.0, -np.sin(t), np.cos(t)],
        ]
    )
    return PolyhedralCone(np.zeros(3), edges)


@pytest.fixture
def skew3():
    """Irregular three-edge cone, no symmetry."""
    edges = np.array(
        [
            [0.9, 0.1, 0.5],
            [-0.2, 0.8, 0.6],
            [0.1, -0.5, 0.9],
        ]
    )
    edges = edges / np.linalg.norm(edges, axis=1)[:, None]
    return PolyhedralCone(np.zeros(3), edges)


@pytest.fixture
def pentacone():
    """Five-edge cone around e3."""
    az = np.deg2rad([0.0, 70.0, 140.0, 215.0, 290.0])
    polar = np.deg2rad([35.0, 45.0, 40.0, 30.0, 42.0])
    edges = np.stack(
        [
            np.sin(polar) * np.cos(az),
            np.sin(polar) * np.sin(az),
            np.cos(polar),
        ],
        axis=1,
    )
    return PolyhedralCone(np.zeros(3), edges)
