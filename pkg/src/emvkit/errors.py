"""Exception types raised by emvkit operations."""


class EMVError(Exception):
    """Base class for all emvkit errors."""


class InvalidInput(EMVError, ValueError):
    """Malformed tables, partial maps, unbound variables, bad documents."""


class InvalidSize(InvalidInput):
    pass


class DomainError(EMVError, ValueError):
    """An operation was applied outside its domain (e.g. lambda_b(x) with x > b)."""


class BoundExhausted(EMVError):
    """A bounded search ran out before finding a required witness."""


class PreconditionViolation(EMVError):
    pass


class Unsupported(EMVError):
    pass
