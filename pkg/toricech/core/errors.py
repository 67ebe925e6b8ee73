__all__ = [
    'ToricECHError',
    'InvalidEdge',
    'ParseError',
    'SharedHyperbolic',
    'EmptyGenerator',
    'InvalidDomain',
    'HLabeledTarget',
    'NotMinimal',
    'BudgetExceeded',
    'NoBracket',
    'MonotonicityError',
    'CertificateError',
]


class ToricECHError(Exception):
    pass


class InvalidEdge(ToricECHError, ValueError):
    pass


class ParseError(ToricECHError, ValueError):
    pass


class SharedHyperbolic(ToricECHError):
    pass


class EmptyGenerator(ToricECHError):
    pass


class InvalidDomain(ToricECHError, ValueError):
    pass


class HLabeledTarget(ToricECHError):
    pass


class NotMinimal(ToricECHError):
    pass


class BudgetExceeded(ToricECHError):

    def __init__(self, budget: int, message: str = '') -> None:
        super(BudgetExceeded, self).__init__(message or f'search exceeded its budget of {budget} nodes')
        self.budget = budget


class NoBracket(ToricECHError):
    pass


class MonotonicityError(ToricECHError):
    pass


class CertificateError(ToricECHError):
    pass
