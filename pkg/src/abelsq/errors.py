"""Exceptions shared across modules."""


class ResourceCapError(RuntimeError):
    """A configured resource cap was reached before a result could be certified."""


class NonStabilizationError(ResourceCapError):
    def __init__(self, message: str, prefix_len: int | None = None, unstable: list | None = None):
        super().__init__(message)
        self.prefix_len = prefix_len
        self.unstable = unstable or []


class RefinementCapError(ResourceCapError):
    def __init__(self, message: str, required: str | None = None):
        super().__init__(message if required is None else f"{message} (needed: {required})")
        self.required = required


class BudgetError(ValueError):
    """An exhaustive search was requested beyond its configured budget."""
