"""Exception hierarchy.

Everything derives from :class:`YBError`. Input problems additionally derive
from :class:`ValueError`; resource limits from :class:`LimitExceeded`.
"""


class YBError(Exception):
    pass


class InvalidInput(YBError, ValueError):
    pass


class BadIndex(InvalidInput):
    pass


class NotBijective(InvalidInput):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BadPermutation(InvalidInput):
    pass


class NotSD(InvalidInput):
    pass


class RequiresNonDegenerate(InvalidInput):
    pass


class RequiresBraided(InvalidInput):
    pass


class IllDefined(InvalidInput):
    pass


class ParseError(InvalidInput):
    pass


class SchemaError(InvalidInput):
    pass


class LimitExceeded(YBError):
    pass


class BudgetExceeded(LimitExceeded):
    """Raised when a tuple space is larger than the element budget."""

    def __init__(self, required, budget):
        super().__init__(f"need {required} tuples, budget is {budget}")
        self.required = required
        self.budget = budget
