"""Exception hierarchy.

``PreconditionError`` means the input does not satisfy what an operation
needs (CLI exit code 2).  ``VerificationError`` means an internal exact check
failed, which indicates a bug or an unsupported configuration (exit code 3).
"""


class ScarfresError(Exception):
    pass


class PreconditionError(ScarfresError, ValueError):
    pass


class NotAntichainError(PreconditionError):
    pass


class NotGenericError(PreconditionError):
    pass


class VerificationError(ScarfresError, RuntimeError):
    pass
