"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class CapabilityError(InputError):
    """The requested objective/mode combination is not supported."""


class CapacityError(RuntimeError):
    """A brute-force guard was exceeded."""
