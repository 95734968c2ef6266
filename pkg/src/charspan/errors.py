"""Exception types shared across the package."""


class CharspanError(Exception):
    """Base class for analysis failures."""


class ShapeError(CharspanError, ValueError):
    pass


class InvarianceViolated(CharspanError):
    """A subspace is not mapped into itself by an endomorphism."""


class VariableMismatch(CharspanError, ValueError):
    pass


class NonHomogeneous(CharspanError, ValueError):
    pass


class NotZeroDimensional(CharspanError):
    pass


class GeneratorCapExceeded(CharspanError):
    pass


class DependentGenerators(CharspanError, ValueError):
    pass


class GenericityFailure(CharspanError):
    pass


class TriangularityViolated(CharspanError, ValueError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"coefficient at (a, lambda, k, b) = {index} violates triangularity")


class SupportViolation(CharspanError, ValueError):
    pass


class MinorExplosion(CharspanError):
    pass


class Unstable(CharspanError):
    """The slicing accumulator was still growing in the last allowed round."""


class NonmonotoneFlag(CharspanError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class FlagFailure(CharspanError):
    """Wraps an error raised mid-flag with the partial flag attached."""

    def __init__(self, message, partial=None, cause=None):
        super().__init__(message)
        self.partial = partial
        self.cause = cause


class ParameterDomain(CharspanError, ValueError):
    pass


class GenerationFailed(CharspanError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class SchemaError(ValueError):
    pass


class ChainViolation(CharspanError):
    """The chain ell <= L <= nu <= n failed."""
