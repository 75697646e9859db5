"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input failed a structural or physical validity check."""


class InvariantViolation(RuntimeError):
    """A computed result broke a relation that must hold by construction."""
