"""Shared exception types."""


class InternalConsistencyError(RuntimeError):
    """An invariant the underlying theory guarantees has failed; indicates a bug."""


class BudgetExceededError(RuntimeError):
    """A bounded search exhausted its budget."""

    def __init__(self, message: str, bound: int):
        super().__init__(message)
        self.bound = bound
