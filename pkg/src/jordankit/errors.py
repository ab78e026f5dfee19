"""Exception types shared across the package."""


class JordanKitError(Exception):
    """Base class for all package-specific failures."""


class DegenerateCurveError(JordanKitError):
    """The sampling is too coarse to carry the construction through."""


class ConstructionError(JordanKitError):
    """A geometric construction could not be completed; carries diagnostics."""


class ResolutionError(ConstructionError):
    """The band radius does not resolve the curve (eps >= injectivity gap / 2)."""


class NotSameFaceError(ConstructionError):
    """Two interior points fall in different faces of the interior subdivision."""

    def __init__(self, message, face_a=None, face_b=None):
        super().__init__(message)
        self.face_a = face_a
        self.face_b = face_b
