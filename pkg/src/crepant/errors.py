"""Shared exception type for domain errors."""


class CrepantError(Exception):
    """Raised when an operation is invoked outside its domain."""
