"""JSON scene and configuration handling plus CSV/JSON output writers.

Scene files describe media, source supports, densities, and corner
metadata; experiment configs bundle a scene with sweep and quadrature
overrides.  Output helpers write diff-friendly CSV (fixed float formatting,
deterministic row order) and a manifest echoing the configuration.

Scene schema (all lengths in the same unit as 1/k):

    medium:   {"omega": 1.0, "eps0": 1.0, "mu0": 1.0}
    cone:     {"apex": [0,0,0], "edges": [[1,0,0], [0,1,0], [0,0,1]]}
    support:  {"type": "ball", "center": [...], "radius": r}
              {"type": "box", "lo": [...], "hi": [...]}
              {"type": "convex-polyhedron", "vertices": [[...], ...]}
              {"type": "truncated-cone", "cone": {...}, "radius": r}
    density:  {"type": "constant", "vector": [re, im] triples or reals}
              {"type": "polynomial", "terms": [{"powers": [i,j,k],
                                                "vector": [...]}, ...]}
              {"type": "holder-radial", "F0": [...], "alpha": a,
               "direction": [...], "apex": [...]}
    potential:{"type": "bump", "center": [...], "radius": r, "m": 5,
               "vector": [...]}
    corner:   {"apex": [...], "cone": {...}, "alpha": a,
               "lipschitz_support": true, "path_to_infinity": true}
"""

from __future__ import annotations

import csv
import json
import platform
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import SceneError
from .geometry import PolyhedralCone, TruncatedCone, as_unit
from .radiation import (
    BallSupport,
    BoxSupport,
    BumpPotential,
    ConeSupport,
    CornerInfo,
    CurrentSource,
    Medium,
    PolyhedronSupport,
    constant_density,
    holder_radial_density,
)


def _vec3(data, name: str) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape != (3,):
        raise SceneError(f"{name} must be a 3-vector, got shape {arr.shape}")
    return arr


def _cvec3(data, name: str) -> np.ndarray:
    arr = np.asarray(data)
    if arr.shape == (3,):
        return arr.astype(complex)
    if arr.shape == (3, 2):
        return arr[:, 0] + 1j * arr[:, 1]
    raise SceneError(f"{name} must be [x,y,z] or [[re,im],...] triples")


def parse_medium(data: dict) -> Medium:
    try:
        return Medium(
            omega=float(data.get("omega", 1.0)),
            eps0=float(data.get("eps0", 1.0)),
            mu0=float(data.get("mu0", 1.0)),
        )
    except (TypeError, ValueError) as exc:
        raise SceneError(f"bad medium spec: {exc}") from exc


def parse_cone(data: dict) -> PolyhedralCone:
    if "edges" not in data:
        raise SceneError("cone spec needs an 'edges' list")
    edges = [as_unit(e) for e in np.asarray(data["edges"], dtype=float)]
    apex = _vec3(data.get("apex", [0.0, 0.0, 0.0]), "apex")
    return PolyhedralCone(apex, np.asarray(edges))


def parse_support(data: dict):
    kind = data.get("type")
    if kind == "ball":
        return BallSupport(_vec3(data["center"], "center"), float(data["radius"]))
    if kind == "box":
        return BoxSupport(_vec3(data["lo"], "lo"), _vec3(data["hi"], "hi"))
    if kind == "convex-polyhedron":
        return PolyhedronSupport(np.asarray(data["vertices"], dtype=float))
    if kind == "truncated-cone":
        cone = parse_cone(data["cone"])
        return ConeSupport(TruncatedCone(cone, float(data["radius"])))
    raise SceneError(f"unknown support type {kind!r}")


def parse_density(data: Optional[dict]):
    if data is None:
        return None
    kind = data.get("type")
    if kind == "constant":
        return constant_density(_cvec3(data["vector"], "vector"))
    if kind == "holder-radial":
        return holder_radial_density(
            _cvec3(data.get("F0", [0.0, 0.0, 0.0]), "F0"),
            float(data["alpha"]),
            _cvec3(data["direction"], "direction"),
            _vec3(data.get("apex", [0.0, 0.0, 0.0]), "apex"),
        )
    if kind == "polynomial":
        terms = [
            (tuple(int(p) for p in t["powers"]), _cvec3(t["vector"], "vector"))
            for t in data["terms"]
        ]

        def dens(pts):
            pts = np.atleast_2d(pts)
            out = np.zeros((len(pts), 3), dtype=complex)
            for (i, j, k), vec in terms:
                mono = pts[:, 0] ** i * pts[:, 1] ** j * pts[:, 2] ** k
                out += mono[:, None] * vec[None, :]
            return out

        return dens
    raise SceneError(f"unknown density type {kind!r}")


def parse_potential(data: Optional[dict]) -> Optional[BumpPotential]:
    if data is None:
        return None
    if data.get("type") != "bump":
        raise SceneError(f"unknown potential type {data.get('type')!r}")
    return BumpPotential(
        _vec3(data["center"], "center"),
        float(data["radius"]),
        int(data.get("m", 5)),
        _cvec3(data["vector"], "vector"),
    )


def parse_corner(data: dict) -> CornerInfo:
    cone = parse_cone(data["cone"]) if "cone" in data else None
    return CornerInfo(
        apex=_vec3(data["apex"], "apex"),
        cone=cone,
        alpha=float(data["alpha"]) if "alpha" in data else None,
        lipschitz_support=bool(data.get("lipschitz_support", True)),
        path_to_infinity=bool(data.get("path_to_infinity", True)),
    )


def parse_source(data: dict) -> CurrentSource:
    if "support" not in data:
        raise SceneError("source scene needs a 'support'")
    return CurrentSource(
        support=parse_support(data["support"]),
        j1=parse_density(data.get("j1")) or (lambda pts: np.zeros((len(np.atleast_2d(pts)), 3), complex)),
        j2=parse_density(data.get("j2")) or (lambda pts: np.zeros((len(np.atleast_2d(pts)), 3), complex)),
        corners=tuple(parse_corner(c) for c in data.get("corners", [])),
        holder_alpha=data.get("holder_alpha"),
        label=data.get("label", ""),
    )


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SceneError(f"cannot read config {path}: {exc}") from exc


# --------------------------------------------------------------------------
# output writers
# --------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return str(x)


def write_csv(path, header, rows) -> None:
    """CSV with fixed 17-significant-digit floats; byte-stable per config."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


class _JsonEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, (np.integer,)):
            return int(o)
        if isinstance(o, (np.floating,)):
            return float(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, complex):
            return {"re": o.real, "im": o.imag}
        return super().default(o)


def write_json(path, payload: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, cls=_JsonEncoder)
        fh.write("\n")


def manifest(experiment: str, config: dict, seed: Optional[int], started: float,
             passed: bool, details: Optional[dict] = None) -> dict:
    """Run record: config echo, versions, seed, wall time, outcome."""
    import scipy

    from . import __version__

    return {
        "experiment": experiment,
        "config": config,
        "seed": seed,
        "passed": bool(passed),
        "wall_time_s": time.time() - started,
        "versions": {
            "cornerfield": __version__,
            "python": sys.version.split()[0],
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "platform": platform.platform(),
        },
        "details": details or {},
    }
