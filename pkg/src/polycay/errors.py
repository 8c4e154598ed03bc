"""Exception hierarchy. Exit-code mapping lives in the CLI."""


class PolycayError(Exception):
    """Base class for all library errors."""


class ParseError(PolycayError):
    """Malformed instance file; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantError(PolycayError):
    """A domain object would violate its invariants (cycle, loop, ...)."""


class DimensionMismatchError(PolycayError):
    """Operands live in different ambient dimensions / ground sets."""


class NotFullDimensionalError(PolycayError):
    """Facet-dependent operation on a lower-dimensional polytope."""


class ResourceCapError(PolycayError):
    """A configured enumeration budget was exceeded (CLI exit code 3)."""


class InternalCheckError(PolycayError):
    """A built-in cross-validation failed; indicates a bug, not bad input."""


class OrderConstructionError(PolycayError):
    """Tie-break rule failed to extend the variable order constraints."""


class KernelMembershipError(PolycayError):
    """A constructed binomial is not in the toric ideal (unequal images)."""
