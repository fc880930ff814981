class BudgetExceeded(RuntimeError):
    """A configured size cap (enumeration, orbit, dimension) was exceeded."""


class NotClosedError(ValueError):
    """An operation that needs a closed subset received a non-closed one."""

    def __init__(self, a, b, s):
        super().__init__(f"subset is not closed: {a} + {b} = {s} is a root outside it")
        self.pair = (a, b)
