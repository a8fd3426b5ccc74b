"""Exception types shared across the package."""


class InputRangeError(ValueError):
    """An argument lies outside the supported numeric domain."""


class InvalidParameterError(ValueError):
    """A parameter combination is structurally invalid (bad field order, bad shape)."""


class ResourceLimitError(RuntimeError):
    """A configured size or budget bound would be exceeded."""


class RowIncompleteError(RuntimeError):
    """The column scan hit the safety cap before completing a row."""


class PreconditionError(ValueError):
    """A checker was handed a structure that violates its stated precondition."""
