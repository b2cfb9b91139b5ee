class RootGroupoidError(Exception):
    pass


class DomainError(RootGroupoidError, ValueError):
    """Mathematical precondition failed (not reflectable, not admissible, ...)."""


class NotReflectableError(DomainError):
    def __init__(self, label, step: int | None = None, message: str | None = None):
        self.label = label
        self.step = step
        if message is None:
            message = f"label {label!r} is not reflectable"
            if step is not None:
                message += f" at step {step}"
        super().__init__(message)


class InternalError(RootGroupoidError, RuntimeError):
    """An invariant that the theory guarantees was breached: a bug, not bad input."""


class ParseError(RootGroupoidError, ValueError):
    pass
