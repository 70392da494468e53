"""Exception types shared across the package."""


class ForcingError(Exception):
    """Base class for every library-specific error."""


# --- network / graph validation ---


class NetworkValidationError(ForcingError, ValueError):
    pass


class EmptyPaletteError(NetworkValidationError):
    pass


class InvalidColorError(NetworkValidationError):
    """Palette colors must be positive integers."""


class RuleOutsidePaletteError(NetworkValidationError):
    pass


class SelfLoopRuleError(NetworkValidationError):
    pass


class DuplicateRuleError(NetworkValidationError):
    pass


class GraphValidationError(ForcingError, ValueError):
    pass


class SelfLoopEdgeError(GraphValidationError):
    pass


class DuplicateEdgeError(GraphValidationError):
    pass


class VertexIndexOutOfRangeError(GraphValidationError):
    pass


class UncoloredVertexError(GraphValidationError):
    pass


class ColorOutsidePaletteError(GraphValidationError):
    pass


# --- engine ---


class LimitExceededError(ForcingError):
    """A run hit an explicit step budget before resolving."""


class NotTerminatedError(ForcingError):
    """end_state() was asked for a run that did not terminate."""


# --- contraction ---


class DomainMismatchError(ForcingError, ValueError):
    pass


# --- classifiers ---


class ClassifierError(ForcingError, ValueError):
    pass


class ThreeColorsPresentError(ClassifierError):
    pass


class NotContractedError(ClassifierError):
    """Some edge joins two vertices of the same color."""


class MissingColorError(ClassifierError):
    pass


class NotCompleteError(ClassifierError):
    pass


class NotCompleteBipartiteError(ClassifierError):
    pass


class PathTooLongError(ClassifierError):
    """The path classifier only characterizes sequences of length <= 5."""


class UnsupportedNetworkError(ClassifierError):
    pass


# --- lab ---


class LabError(ForcingError):
    pass


class InvalidParamsError(LabError, ValueError):
    pass


class BudgetExceededError(LabError):
    pass


class UnknownClaimError(LabError, ValueError):
    pass


class DisconnectedError(LabError, ValueError):
    pass
