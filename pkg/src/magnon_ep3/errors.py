"""Exception types shared across the package.

Every error carries the module and operation that raised it so the CLI can
emit a structured record.
"""


class ModelError(Exception):
    """Base class. ``numerical`` separates procedure failures from bad input."""

    numerical = False

    def __init__(self, message, *, module="", operation=""):
        super().__init__(message)
        self.module = module
        self.operation = operation

    def record(self):
        return {
            "module": self.module,
            "operation": self.operation,
            "error": type(self).__name__,
            "message": str(self),
        }


class ValidationError(ModelError, ValueError):
    """A precondition on the inputs does not hold."""


class InvalidWindow(ValidationError):
    pass


class InsufficientSamples(ValidationError):
    pass


class NoRootInBracket(ModelError):
    numerical = True


class DipCountMismatch(ModelError):
    numerical = True

    def __init__(self, message, *, count, module="scattering", operation="find_dips", context=None):
        super().__init__(message, module=module, operation=operation)
        self.count = count
        self.context = context or {}

    def record(self):
        rec = super().record()
        rec["count"] = self.count
        rec.update(self.context)
        return rec
