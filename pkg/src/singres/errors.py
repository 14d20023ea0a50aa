"""Exception hierarchy shared by every module.

Each error carries a short machine-parseable ``tag`` (printed by the CLI)
and an ``exit_code`` so command-line failures stay scriptable.
"""


class EngineError(Exception):
    tag = "ERROR"
    exit_code = 1

    def __str__(self):
        msg = super().__str__()
        return f"{self.tag}: {msg}" if msg else self.tag


class RingMismatchError(EngineError):
    tag = "RING-MISMATCH"
    exit_code = 3


class ParseError(EngineError):
    tag = "PARSE-ERROR"
    exit_code = 2

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(ParseError):
    tag = "UNKNOWN-VARIABLE"


class NotSmoothError(EngineError):
    tag = "NOT-SMOOTH"
    exit_code = 3


class NotRegularParametersError(EngineError):
    tag = "NOT-REGULAR-PARAMETERS"
    exit_code = 3


class PreconditionError(EngineError):
    tag = "PRECONDITION-VIOLATION"
    exit_code = 3


class PartitionFailureError(EngineError):
    tag = "PARTITION-FAILURE"
    exit_code = 3


class NotCoprimeError(EngineError):
    tag = "NOT-COPRIME"
    exit_code = 3


class StepLimitError(EngineError):
    tag = "STEP-LIMIT"
    exit_code = 4


class WorkLimitError(EngineError):
    tag = "WORK-LIMIT"
    exit_code = 4


class NonterminationGuardError(EngineError):
    tag = "NONTERMINATION-GUARD"
    exit_code = 4
