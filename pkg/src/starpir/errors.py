"""Exception types shared across the package."""


class StarPirError(Exception):
    """Base class for all starpir errors."""


class ValidationError(StarPirError):
    """Invalid input: bad parameters, malformed data, failed precondition."""


class BudgetExceededError(StarPirError):
    """An exhaustive enumeration would exceed the configured budget."""


class SingularMatrixError(ValidationError):
    """Matrix inversion was requested for a singular matrix."""


class PlanConditionError(ValidationError):
    """A retrieval-plan validity condition failed.

    condition: 1 (row set not an information set of the storage code),
               2 (iteration set not extendable to an information set of the
                  dual star code),
               3 (per-server coverage counts differ between the two
                  collections).
    offender: the offending set or server index, 0-based.
    """

    def __init__(self, condition: int, offender, message: str):
        super().__init__(message)
        self.condition = condition
        self.offender = offender


class CapExceededError(ValidationError):
    """An orbit-based plan would exceed the configured size cap.

    Carries the row and iteration counts the construction would need, so a
    caller can fall back to another strategy.
    """

    def __init__(self, row_count: int, iteration_count: int, cap: int):
        super().__init__(
            f"orbit plan needs {row_count} rows and {iteration_count} "
            f"iterations, exceeding cap {cap}"
        )
        self.row_count = row_count
        self.iteration_count = iteration_count
        self.cap = cap
