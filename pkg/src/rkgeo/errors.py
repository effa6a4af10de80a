"""Exception hierarchy shared by every module."""


class RkgeoError(Exception):
    """Base class for all library errors."""


class ValidationError(RkgeoError, ValueError):
    """Input violates a documented precondition."""


class NotHermitian(ValidationError):
    pass


class NotUnitary(ValidationError):
    pass


class BranchAmbiguity(RkgeoError):
    """The principal logarithm is not unique (eigenvalue at -1)."""


class NoConvergence(RkgeoError):
    pass


class TooLarge(ValidationError):
    pass


class DegreeZero(ValidationError):
    pass


class OutOfDomain(ValidationError):
    pass


class SeriesDivergence(ValidationError):
    pass


class ZeroKernel(RkgeoError):
    pass


class SetsIntersect(ValidationError):
    pass


class CardinalityMismatch(ValidationError):
    pass


class LinearlyDependentKernels(RkgeoError):
    pass


class ZeroDenominator(ValidationError):
    pass


class InsufficientInteriorRoots(RkgeoError):
    pass


class NoInteriorRoot(RkgeoError):
    pass


class DegenerateQuadratic(RkgeoError):
    pass


class SingularSum(RkgeoError):
    pass


class IllConditioned(RkgeoError):
    pass


class PoleOnBoundaryNumerics(RkgeoError):
    pass


class GridTooCoarse(RkgeoError):
    pass


class ZeroOnContour(RkgeoError):
    pass


class AlphaDegenerate(ValidationError):
    pass


class NumericalContradiction(RkgeoError):
    """A computed value contradicts a proven guarantee."""
