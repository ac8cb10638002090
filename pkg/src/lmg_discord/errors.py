"""Exception types."""


class InvalidParameterError(ValueError):
    """A model or run parameter is outside its allowed range."""


class InvalidStateError(ValueError):
    """A two-qubit state is not a legal density matrix."""


class PhaseDispatchError(ValueError):
    """A phase-specific routine was called for the wrong bath phase."""


class InvariantViolation(RuntimeError):
    """A computed quantity broke a physical invariant at run time."""
