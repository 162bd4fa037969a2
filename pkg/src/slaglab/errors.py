"""Exception types raised by slaglab.

Every computational failure raises a subclass of :class:`SlagLabError`;
input/parsing failures raise :class:`SchemaViolation` or
:class:`MalformedInput`.  The CLI maps the former to exit code 1 and the
latter two to exit code 2.
"""


class SlagLabError(Exception):
    """Base class for all slaglab errors."""


# -- linear algebra kernels ------------------------------------------------

class SingularInput(SlagLabError):
    """Matrix is singular (or numerically so) where invertibility is required."""


class NotSymmetric(SlagLabError):
    """Matrix fails the symmetry tolerance."""


class NotUnitary(SlagLabError):
    """Matrix fails the unitarity tolerance."""


class SamplingTooCoarse(SlagLabError):
    """Consecutive rotations differ by an angle >= pi/2; refine the sampling."""


class DegreeOverflow(SlagLabError):
    """Wedge product would exceed the top degree 7."""


# -- special Lagrangian planes ----------------------------------------------

class NotTransverse(SlagLabError):
    """Plane pair is not transverse within tolerance."""


class NotGraphical(SlagLabError):
    """Second plane is not a graph over the first."""


class EigenvalueSignatureViolated(SlagLabError):
    """Bilinear form does not have the (-,+,+) signature at the given margin."""


# -- G2 / coassociative -----------------------------------------------------

class NotUnit(SlagLabError):
    """Direction vector is not unit length."""


class DegenerateSpan(SlagLabError):
    """Spanning vectors are linearly dependent."""


class NotSpecialLagrangian(SlagLabError):
    """Plane fails the special Lagrangian conditions."""


class DirectionNotContained(SlagLabError):
    """The circle direction u is not contained in the 4-plane."""


class ExcessIntersection(SlagLabError):
    """Two 4-planes intersect in more than the line spanned by u."""


class NotNormal(SlagLabError):
    """Vector is not orthogonal to the given 4-plane."""


class FieldNonvanishingOnZ(SlagLabError):
    """Sampled 2-form coefficients do not vanish along the circle axis."""


# -- loops and invariants ----------------------------------------------------

class Discontinuous(SlagLabError):
    """Consecutive loop samples exceed the continuity tolerance."""


class NotCloseGraphical(SlagLabError):
    """A loop sample leaves the close-graphical region."""


class EigenlineAmbiguous(SlagLabError):
    """Consecutive eigenlines nearly orthogonal; the loop needs refinement."""


class BadLambda(SlagLabError):
    """Model eigenvalue parameter outside (0, 1)."""


class PerturbationLeftRegion(SlagLabError):
    """Rejection sampling failed to keep the perturbed loop in its region."""


class OrientationMismatch(SlagLabError):
    """Framing comparison loop fails det = +1."""


class EmptyComponents(SlagLabError):
    """Connected-sum descriptor needs at least one circle component."""


# -- I/O ----------------------------------------------------------------------

class SchemaViolation(SlagLabError):
    """Document violates its schema.  ``pointer`` is a JSON-pointer location."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}" if pointer else message)
        self.pointer = pointer


class MalformedInput(SlagLabError):
    """File is missing or not parseable as JSON."""
