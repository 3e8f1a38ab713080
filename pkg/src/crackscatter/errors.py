"""Exception hierarchy.

Everything numerical raises a subclass of CrackScatterError so callers can
distinguish solver failures (exit code 1) from bad configuration (exit
code 2, ConfigError).
"""


class CrackScatterError(Exception):
    """Base class for all solver errors."""


class ConfigError(CrackScatterError):
    """Invalid user input: malformed layout, bad angle, unknown option."""


class DegenerateFrequency(CrackScatterError):
    """Omega at a lattice degeneracy (0, 2, 2*sqrt(2)) where the
    propagation constant is ill-defined."""


class BranchAmbiguity(CrackScatterError):
    """Both roots of the quadratic lie on the unit circle and coincide;
    no limiting-absorption argument can separate them."""


class PoleHit(CrackScatterError):
    """Evaluation point coincides with a pole of the rational function."""


class MultipleZPKPole(CrackScatterError):
    """Zero/pole/gain form contains a repeated pole; partial fractions
    over simple poles do not apply."""


class PoleCollision(CrackScatterError):
    """Product of two rational functions would create a double pole."""


class PoleOnCircle(CrackScatterError):
    """A pole sits inside the guard band around |z| = 1, so sides for the
    additive split cannot be assigned."""


class CircleStraddle(PoleOnCircle):
    """A zero or pole of the kernel approximant sits too close to |z| = 1
    to partition for factorization."""


class ApproximationFailed(CrackScatterError):
    """Rational fit of the kernel did not reach the requested accuracy."""


class PoleOnContour(CrackScatterError):
    """A pole of the integrand lies within the clearance band around the
    quadrature contour."""


class NearPole(CrackScatterError):
    """Requested evaluation too close to a pole for reliable arithmetic."""


class OutOfGrid(CrackScatterError):
    """Lattice index outside the reconstructed window."""


class QuadratureUnresolved(CrackScatterError):
    """Contour quadrature failed its self-consistency (doubling) check."""


class SingularSystem(CrackScatterError):
    """Dense crack-face system is numerically singular."""


class SemiInfiniteUnsupportedAngle(CrackScatterError):
    """Incidence angle puts the semi-infinite forcing pole on the wrong
    side of the branch cut for the chosen contour indentation."""
