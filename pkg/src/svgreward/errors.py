"""Exception types shared across the package.

Every contract violation raises one of these rather than a bare ValueError,
so callers (and the CLI exit-code mapping) can tell input problems apart
from scorer transport failures.
"""


class SvgRewardError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SvgRewardError):
    """Markup is not well-formed XML."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class NonSvgRootError(SvgRewardError):
    """Well-formed markup whose root element is not <svg>."""


class RenderError(SvgRewardError):
    """The raster backend rejected the document."""


class MalformedPathDataError(SvgRewardError):
    """A path `d` attribute that cannot be tokenized."""


class DimensionMismatchError(SvgRewardError):
    """Two vectors/matrices/images that must agree in shape do not."""


class ZeroVectorError(SvgRewardError):
    """A vector that must be non-zero has (near-)zero norm."""


class ComponentOutOfRangeError(SvgRewardError):
    """A reward component lies outside its declared range."""


class LengthMismatchError(SvgRewardError):
    """Paired per-token sequences have different lengths."""


class DegenerateGroupError(SvgRewardError):
    """All group rewards equal while the stabilizing constant is zero."""


class EmptySequenceError(SvgRewardError):
    """An operation that needs at least one token got none."""


class EmptyInputError(SvgRewardError):
    """A corpus-level metric received zero records."""


class NumericalFailureError(SvgRewardError):
    """An eigendecomposition or similar numeric routine did not converge."""


class ScorerUnavailableError(SvgRewardError):
    """Remote scorer transport failure; never silently zeroed."""


class InputFormatError(SvgRewardError):
    """An input file is missing, unreadable, or violates its schema."""
