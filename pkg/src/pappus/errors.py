"""Exception and warning types shared across the package."""


class PappusError(Exception):
    """Base class for all package errors."""


class EqualPoints(PappusError):
    """Join of two projectively equal points is undefined."""


class EqualLines(PappusError):
    """Meet of two projectively equal lines is undefined."""


class FieldMismatch(PappusError):
    """Mixed real/complex operands where a single field is required."""


class KernelHit(PappusError):
    """A map was applied to a point in its kernel (rank-deficient map)."""


class DegenerateFrame(PappusError):
    """Four points with three collinear cannot anchor a projective frame."""


class IllConditioned(PappusError):
    """A numerical routine could not reach its accuracy target."""


class NotEscaping(PappusError):
    """A map sequence did not converge to a singular normalized limit."""


class TooShort(PappusError):
    """A sequence was too short for the requested analysis."""


class DegenerateBox(PappusError):
    """A marked-box operation produced coincident or collinear data."""


class BadLetter(PappusError):
    """A word contains a symbol outside the generator alphabet."""


class MarkMismatch(PappusError):
    """A group element failed the mark-consistency requirement."""


class NotLoxodromic(PappusError):
    """A spectral operation requires three distinct moduli."""


class EmptyApprox(PappusError):
    """A limit-set approximation holds no samples of the needed kind."""


class ProbeTooClose(PappusError):
    """A discontinuity probe sits too close to the sampled limit set."""


class TooFew(PappusError):
    """Not enough distinct inputs for the requested census."""


class DegenerateSeed(PappusError):
    """The seed box generates a flat (line-bound) configuration."""


class PrecisionFallbackWarning(UserWarning):
    """Exact rational data exceeded the bit ceiling and was demoted to float."""
