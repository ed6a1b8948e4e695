"""Exception hierarchy shared by all modules."""


class EVCBoundsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EVCBoundsError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterOutOfRange(DomainError):
    """Family parameters violate the admissible range of their tag."""


class InvalidPickands(EVCBoundsError, ValueError):
    """A knot list is not a Pickands dependence function."""


class NoClosedForm(EVCBoundsError):
    """No closed-form measure is available for this family tag."""


class ToleranceNotReached(EVCBoundsError, ArithmeticError):
    """Adaptive quadrature exhausted its subdivision depth."""


class NoSignChange(EVCBoundsError, ValueError):
    """The root bracket does not contain a sign change."""


class PointOutsideRegion(EVCBoundsError, ValueError):
    """The requested point is not in the region."""


class WitnessNotFound(EVCBoundsError, RuntimeError):
    """No witness could be certified for a point inside the region."""
