"""Exception types raised across the package.

Every computational module signals contract violations through one of these
classes so that callers (and the CLI) can report machine-readable failures.
"""


class CornerfieldError(Exception):
    """Base class for all errors raised by this package."""


# --- cone geometry ---------------------------------------------------------

class ConeError(CornerfieldError):
    pass


class TooFewEdges(ConeError):
    """A polyhedral cone needs at least three edge directions."""


class DegenerateCone(ConeError):
    """Some triple of edge directions is (numerically) coplanar."""


class NotStrictlyConvex(ConeError):
    """The edges do not fit strictly inside an open half space."""


class RedundantEdge(ConeError):
    """An edge direction lies in the conical hull of the others."""


class NoSeparator(ConeError):
    """No plane through the chosen edge strictly separates it from the rest."""


# --- probe-field construction ----------------------------------------------

class SOutOfRange(CornerfieldError):
    """The slant parameter s must lie in (0, s0)."""


class TauBelowK(CornerfieldError):
    """The decay parameter tau must satisfy tau >= k > 0."""


class DispersionMismatch(CornerfieldError):
    """k^2 != omega^2 * eps0 * mu0 beyond tolerance."""


class ZeroSource(CornerfieldError):
    """A nontrivial constant vector was required but (numerically) zero given."""


# --- integration -----------------------------------------------------------

class NonConvergent(CornerfieldError):
    """A closed-form cone integral does not converge (Re(rho . w_j) >= 0)."""


class NoConvergence(CornerfieldError):
    """Adaptive quadrature hit its order cap without meeting the tolerance."""


# --- radiation -------------------------------------------------------------

class PointInSupport(CornerfieldError):
    """Near-field evaluation point lies inside (or on) the source support."""


class GridMismatch(CornerfieldError):
    """Two far-field patterns were compared on different sphere grids."""


class UnsupportedPotential(CornerfieldError):
    """No closed-form curl is available for the given potential."""


# --- corner analysis -------------------------------------------------------

class BelowNoiseFloor(CornerfieldError):
    """Sweep values are too small for a meaningful decay fit."""


class TooFewPoints(CornerfieldError):
    """A fit or extrapolation needs more sweep points."""


class ExtrapolationUnstable(CornerfieldError):
    """Richardson extrapolants do not settle (non-monotone residuals)."""


# --- scenes / CLI ----------------------------------------------------------

class SceneError(CornerfieldError):
    """A JSON scene or experiment configuration is malformed."""
