"""Exception hierarchy shared by every module of the package."""


class ToricError(Exception):
    """Base class for all errors raised by toricmass."""


class ParseError(ToricError):
    pass


class DimensionMismatch(ToricError):
    pass


class NonPrimitiveConormal(ToricError):
    pass


class NotPrimitive(ToricError):
    pass


class SingularMatrix(ToricError):
    pass


class UnboundedOrEmpty(ToricError):
    pass


class DegenerateInput(ToricError):
    pass


class DegenerateFacet(ToricError):
    pass


class ZeroVolume(ToricError):
    pass


class NonPositiveScale(ToricError):
    pass


class NonPositiveParameter(ToricError):
    pass


class ChamberExit(ToricError):
    """A perturbed support vector left the combinatorial chamber."""


class ChamberSamplingFailed(ChamberExit):
    pass


class InterpolationInconsistent(ToricError):
    """A validation sample disagreed with the exact interpolant."""


class InadmissibleParams(ToricError):
    pass


class NotDelzant(ToricError):
    pass
