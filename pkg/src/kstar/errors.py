"""Exception hierarchy.

Grouped into families so the CLI can map each family to a distinct exit code.
"""


class KstarError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(KstarError):
    """Invalid in-memory input (bad shapes, values, or parameters)."""


class NonFiniteValue(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class SingleConcept(ValidationError):
    pass


class TooFewSamples(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class ZeroNormVector(ValidationError):
    pass


class InvalidSpec(ValidationError):
    pass


class FormatError(KstarError):
    """Malformed file content (binary interchange, CSV, or report JSON)."""


class BadMagic(FormatError):
    pass


class Truncated(FormatError):
    pass


class LabelOutOfRange(FormatError):
    pass


class ParseError(FormatError):
    pass


class RaggedRows(FormatError):
    pass


class SchemaMismatch(FormatError):
    pass


class InstanceTooLarge(KstarError):
    """Guard against accidentally running the quadratic reference at scale."""


class AllDegenerate(KstarError):
    """No concept has a finite skewness; the averaged coefficient is undefined."""
