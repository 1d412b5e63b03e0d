"""Exception and warning types shared across the package."""


class GraphSamplingError(Exception):
    """Base class for every error raised by this package."""


class NonSquareError(GraphSamplingError, ValueError):
    """Matrix expected to be square is not."""


class NonFiniteError(GraphSamplingError, ValueError):
    """Matrix or vector contains NaN or infinite entries."""


class DimensionMismatchError(GraphSamplingError, ValueError):
    """Operands have incompatible dimensions."""


class DefectiveBasisError(GraphSamplingError):
    """Eigenvector matrix is numerically singular (no usable eigenbasis)."""


class InvalidPermutationError(GraphSamplingError, ValueError):
    """Sequence is not a permutation of 0..N-1."""


class DuplicateIndexError(GraphSamplingError, ValueError):
    """Sample indices contain repeats."""


class OutOfRangeError(GraphSamplingError, ValueError):
    """Index or count outside the valid range."""


class BandError(GraphSamplingError, ValueError):
    """Bandwidth or band specification is invalid for this graph."""


class NotQualifiedError(GraphSamplingError):
    """Sampling operator does not have full rank on the chosen band."""


class SampleCountMismatchError(GraphSamplingError, ValueError):
    """Operation requires the sample count to equal the bandwidth."""


class SubsetTooLargeError(GraphSamplingError, ValueError):
    """Exhaustive subset enumeration would exceed the configured budget."""


class NoQualifiedOperatorError(GraphSamplingError):
    """No qualified sampling operator found within the retry budget."""


class BandsNotPartitionError(GraphSamplingError, ValueError):
    """Channel bands do not partition the spectrum."""


class DecompositionFailuresError(GraphSamplingError):
    """Too many trial graphs had no usable eigenbasis."""


class ScalingUnavailableError(GraphSamplingError):
    """Eigenvector matrix cannot be scaled to an orthogonal frame."""


class DegenerateFeaturesError(GraphSamplingError, ValueError):
    """All feature vectors coincide; pairwise distances are zero."""


class MatrixParseError(GraphSamplingError, ValueError):
    """A matrix file could not be parsed."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DimensionHeaderError(MatrixParseError):
    """Declared dimensions disagree with the file contents."""


class IllConditionedWarning(UserWarning):
    """Sampled basis is close to singular; recovery may amplify noise."""


class NotBandlimitedWarning(UserWarning):
    """Signal has spectral content beyond the stated bandwidth."""


class ComplexPartWarning(UserWarning):
    """Imaginary parts above tolerance were discarded."""


class FitConvergenceWarning(UserWarning):
    """Optimizer stopped before reaching the gradient tolerance."""
