"""Exception hierarchy. Every error carries a stable machine-readable ``code``
and the process exit status the CLI uses for it."""


class RootfieldError(Exception):
    code = "ERROR"
    exit_code = 1


class UsageError(RootfieldError, ValueError):
    code = "USAGE"
    exit_code = 2


class NonResidueError(RootfieldError):
    code = "NON_RESIDUE"
    exit_code = 3


class NotApplicableError(RootfieldError):
    code = "NOT_APPLICABLE"
    exit_code = 4


class WitnessSearchError(RootfieldError):
    code = "WITNESS_SEARCH_FAILED"
    exit_code = 5


class InconsistencyError(RootfieldError, ArithmeticError):
    code = "INTERNAL_INCONSISTENCY"
    exit_code = 6


class PrimeSearchError(RootfieldError):
    code = "PRIME_SEARCH_FAILED"
    exit_code = 7


class NonInvertibleError(RootfieldError, ZeroDivisionError):
    code = "NON_INVERTIBLE"
    exit_code = 8


class BudgetExceeded(RootfieldError):
    code = "BUDGET_EXCEEDED"
    exit_code = 9
