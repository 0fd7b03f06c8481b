"""Exception hierarchy.

Everything raised on bad input derives from :class:`ValidationError`; size
guards raise :class:`SizeLimitError`. The CLI maps these to exit codes 2 and 3.
"""


class PauliTreeError(Exception):
    pass


class ValidationError(PauliTreeError, ValueError):
    pass


class SizeLimitError(PauliTreeError):
    pass


class InvalidCharacterError(ValidationError):
    def __init__(self, char, position):
        super().__init__(f"invalid Pauli character {char!r} at position {position}")
        self.char = char
        self.position = position


class EmptyStringError(ValidationError):
    pass


class SchemaError(ValidationError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class QubitCountMismatch(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class SpinBlockViolation(ValidationError):
    pass


class EmptyAnsatz(ValidationError):
    pass


class RatioOutOfRange(ValidationError):
    pass


class DegreeBoundViolated(ValidationError):
    pass


class DisconnectedGraph(ValidationError):
    pass


class DuplicateEdge(ValidationError):
    pass


class EmptySupport(ValidationError):
    pass


class TreeSupportMismatch(ValidationError):
    pass


class CapacityExceeded(ValidationError):
    pass


class NotATree(ValidationError):
    pass


class LayoutMismatch(ValidationError):
    pass


class ArityMismatch(ValidationError):
    pass


class NonFiniteEnergy(PauliTreeError, ArithmeticError):
    pass
