"""Exception types raised across the package."""


class PdThreshError(ValueError):
    """Base class for all pdthresh errors."""


class GraphFormatError(PdThreshError):
    pass


class MatrixFormatError(PdThreshError):
    pass


class NonFiniteError(PdThreshError):
    pass


class DimensionMismatchError(PdThreshError):
    pass


class NotConnectedError(PdThreshError):
    pass


class NotChordalError(PdThreshError):
    pass


class NotATreeError(PdThreshError):
    pass


class NotAPathPatternError(PdThreshError):
    pass


class NotASubgraphError(PdThreshError):
    pass


class NoBrokenCycleError(PdThreshError):
    pass


class TooSmallError(PdThreshError):
    pass


class SingularBlockError(PdThreshError):
    pass


class NotPdError(PdThreshError):
    pass


class PatternMismatchError(PdThreshError):
    pass


class InvalidDecompositionError(PdThreshError):
    pass


class NonpositiveDiagonalError(PdThreshError):
    pass
