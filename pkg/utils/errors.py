"""Exception types shared by the library, the CLI and the HTTP routers."""


class DomainError(ValueError):
    """An argument falls outside the domain an operation is defined on."""
    pass


class NonInjectiveWindowError(DomainError):
    pass


class WitnessInvariantError(AssertionError):
    """A constructed collision witness failed its own congruence check.

    Never caused by user input; it means the construction code is wrong.
    """
    pass


class UsageError(ValueError):
    pass


__all__ = [
    "DomainError",
    "NonInjectiveWindowError",
    "WitnessInvariantError",
    "UsageError",
]
