"""Corner behaviour of time-harmonic Maxwell current sources.

Numerical realization of the corner-vanishing dichotomy: edge-anchored
complex-exponential probe fields, closed-form and quadrature integrals over
polyhedral cones, far-field radiation of volumetric current pairs,
radiationless source constructions, and decay-rate classification of
densities at cone apexes.
"""

__version__ = "0.1.0"

from .analysis import (
    ApexEstimate,
    BoxDomain,
    ClassifierConfig,
    DecayReport,
    DecayThresholds,
    PolynomialField,
    TauSweep,
    TetDomain,
    cgo_functional,
    classify_apex,
    decay_exponent,
    estimate_apex_value,
    measured_nonradiating_floor,
    reciprocity_check,
    run_tau_sweep,
    uniqueness_demo,
)
from .cgo import (
    ELECTRIC_PROBE,
    MAGNETIC_PROBE,
    CgoFieldPair,
    CgoParameters,
    PlaneWavePair,
    bdot,
    build_cgo,
    cgo_fields,
    s_upper_bound,
    select_s,
)
from .geometry import (
    ConvexityReport,
    PolyhedralCone,
    SimplicialCone,
    SphericalPolygon,
    TruncatedCone,
    contains,
    fan_from,
    patch_min_decay,
    random_cone,
    separating_direction,
    simplicial_fan,
    spherical_patch,
    validate_cone,
)
from .integrals import (
    IntegrandSpec,
    RadialAngularRule,
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
from .radiation import (
    BallSupport,
    BoxSupport,
    BumpPotential,
    ConeSupport,
    CurrentSource,
    FarFieldPattern,
    Medium,
    PolyhedronSupport,
    constant_density,
    curl_curl_source,
    default_sphere_grid,
    dipole_far_field_analytic,
    far_field,
    far_field_difference,
    holder_radial_density,
    near_field,
    nonradiating_from_potentials,
)
