"""Exception hierarchy shared across the package."""


class HyperelmError(Exception):
    """Base class for all errors raised by hyperelm."""


class ShapeMismatchError(HyperelmError):
    """Array or matrix dimensions disagree with what the operation requires."""


class NonFiniteError(HyperelmError):
    """A NaN or infinity showed up where only finite reals are allowed."""


class AlgebraMismatchError(HyperelmError):
    """Operands belong to different algebras (identity: name + table)."""


class UnknownAlgebraError(HyperelmError):
    """Name does not refer to a catalog algebra, or a claimed builtin table
    does not match the catalog."""


class EmptyParameterListError(HyperelmError):
    """Cayley-Dickson construction needs at least one doubling parameter."""


class ConvergenceFailureError(HyperelmError):
    """The SVD underlying the pseudoinverse did not converge."""


class NotTrainedError(HyperelmError):
    """Prediction requested before the output layer was fitted."""


class SeriesTooShortError(HyperelmError):
    """Time series shorter than the sliding window."""


class WrongAlgebraDimError(HyperelmError):
    """Encoding requires a four-dimensional algebra."""


class DegenerateVarianceError(HyperelmError):
    """Signal variance is zero; the prediction gain is undefined."""


class FormatError(HyperelmError):
    """A file does not follow the expected layout."""
