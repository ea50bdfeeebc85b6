class DomainError(ValueError):
    """Raised when an input violates a mathematical precondition."""


class GroupTableError(DomainError):
    pass


class CocycleError(DomainError):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple
