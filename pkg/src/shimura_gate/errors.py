"""Exception hierarchy shared by every module of the package."""


class ShimuraGateError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""

    exit_code = 2


class InvalidInput(ShimuraGateError):
    pass


class MalformedInput(InvalidInput):
    pass


class InvalidDiscriminant(InvalidInput):
    pass


class NonAbelianField(InvalidInput):
    pass


class UnsupportedDiscriminant(InvalidInput):
    pass


class NotPrincipal(ShimuraGateError):
    pass


class NoKnownModel(InvalidInput):
    pass


class ExhaustedSearch(ShimuraGateError):
    pass


class DegreeUnsupported(ShimuraGateError):
    exit_code = 3


class UnsupportedCompletion(ShimuraGateError):
    pass
