"""Error types shared across the package.

The CLI maps these to exit codes: InputError -> 1, CapabilityError -> 2.
"""


class InputError(ValueError):
    """Invalid argument, malformed file, or violated precondition."""


class CapabilityError(RuntimeError):
    """Request exceeds a supported size or resource bound."""
