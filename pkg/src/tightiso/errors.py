"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`TightIsoError`.  Validation failures carry the offending witness so
callers (and the CLI) can report it.
"""


class TightIsoError(Exception):
    """Base class for all package errors."""


class InputError(TightIsoError):
    """Malformed or unusable input (CLI exit code 3)."""


class ParseError(InputError):
    def __init__(self, message, offset=None):
        super().__init__(message)
        self.reason = message
        self.offset = offset

    def __str__(self):
        if self.offset is None:
            return self.reason
        return f"{self.reason} (byte offset {self.offset})"

    def shifted(self, by):
        """Same error with the offset moved right by `by` bytes."""
        return ParseError(self.reason, (self.offset or 0) + by)


class ValidationError(InputError):
    """A multiplication table failed the inverse semigroup axioms."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ShapeError(ValidationError):
    pass


class NonAssociative(ValidationError):
    pass


class InvalidZero(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class NonUniqueInverse(ValidationError):
    pass


class StarMismatch(ValidationError):
    pass


class SizeLimit(InputError):
    pass


class CNotSubsetOfD(TightIsoError):
    pass


class PreconditionError(TightIsoError):
    pass


class PreconditionE(PreconditionError):
    pass


class PreconditionSiso(PreconditionError):
    pass


class PreconditionB(PreconditionError):
    pass


class DomainViolation(PreconditionError):
    pass


class NotInDomain(PreconditionError):
    pass


class NotFinite(PreconditionError):
    pass


class NotSubgroupoid(PreconditionError):
    pass


class NotARepresentation(TightIsoError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Undecidable(TightIsoError):
    """The backend has no exact decision procedure for the question."""


class UnknownSuite(InputError):
    pass


class InvariantViolation(AssertionError):
    """An internal cross-check failed.  Always indicates a bug; never swallowed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CharacterizationMismatch(InvariantViolation):
    pass


class SandwichViolation(InvariantViolation):
    pass
