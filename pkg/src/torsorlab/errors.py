"""Exception hierarchy shared by every layer of the library."""


class TorsorLabError(Exception):
    """Base class for all library errors."""


class DomainMismatch(TorsorLabError):
    """Two values live over different scalar domains."""


class ShapeError(TorsorLabError):
    """Matrix or action dimensions do not fit together."""


class NoSolution(TorsorLabError):
    """A linear system has no solution (a factorization does not exist)."""


class DimensionCapExceeded(TorsorLabError):
    """An intermediate space would exceed the configured dimension cap."""


class NotUnital(TorsorLabError):
    """Zero-dimensional algebras are rejected."""


class ActionMismatch(TorsorLabError):
    """Modules are declared over different algebras."""


class NotFGP(TorsorLabError):
    """No dual basis exists: the module is not finitely generated projective."""


class FactorizationFailure(TorsorLabError):
    """A map expected to factor through a monomorphism does not.

    ``step`` names the construction step that failed.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class InversionFailure(TorsorLabError):
    """A map expected to be invertible is singular."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(TorsorLabError):
    """Input data fails a structural validation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotALifting(TorsorLabError):
    pass


class NotGalois(TorsorLabError):
    pass


class ClosureFailure(TorsorLabError):
    pass


class NotRegular(TorsorLabError):
    pass


class NotCoRegular(TorsorLabError):
    pass


class ComparisonUndefined(TorsorLabError):
    pass


class UnknownExample(TorsorLabError):
    pass


class ParseError(TorsorLabError):
    """Malformed session input; carries a 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
