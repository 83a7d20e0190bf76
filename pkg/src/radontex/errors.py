"""Exception hierarchy.

The CLI maps these onto exit codes: FormatError -> 2, DomainError -> 3,
ConfigMismatch -> 4.
"""


class RadontexError(Exception):
    """Base class for every error raised by this package."""

    def annotate(self, label):
        """Prefix the message with a context label (stage name, step, ...)."""
        msg = str(self)
        self.args = (f"{label}: {msg}" if msg else label,)
        return self


class FormatError(RadontexError, ValueError):
    pass


class BadMagic(FormatError):
    pass


class BadHeader(FormatError):
    pass


class TruncatedPayload(FormatError):
    pass


class DomainError(RadontexError, ValueError):
    """Input violates a precondition of the requested computation."""


class DegenerateHistogram(DomainError):
    pass


class BadHeight(DomainError):
    pass


class EmptyImage(DomainError):
    pass


class AspectTooSquare(DomainError):
    pass


class NotNormalized(DomainError):
    pass


class CurveTooShort(DomainError):
    pass


class TooShort(DomainError):
    pass


class ZeroVariance(DomainError):
    pass


class StrokeOverflow(DomainError):
    pass


class EmptyGallery(DomainError):
    pass


class ConfigMismatch(RadontexError, ValueError):
    pass
