"""
Custom exceptions for the q-Dedekind audit library
"""


class QDedekindException(Exception):
    """Base exception for all q-Dedekind errors"""
    pass


class PreconditionError(QDedekindException):
    """Raised when an operation is called outside its domain"""
    def __init__(self, param: str, message: str):
        self.param = param
        super().__init__(f"Invalid parameter '{param}': {message}")


class UnknownClaimError(PreconditionError):
    """Raised when a claim id is not in the ledger"""
    def __init__(self, claim_id: str):
        super().__init__("claim", f"unknown claim id '{claim_id}'")


class ResourceLimitError(QDedekindException):
    """Raised when a Riemann sum would exceed the desk-scale cap"""
    def __init__(self, points: int, cap: int):
        self.points = points
        self.cap = cap
        super().__init__(f"Refusing to sum over {points} points (cap is {cap})")


class PoleError(QDedekindException):
    """Raised when a closed form is evaluated at one of its poles"""
    def __init__(self, expression: str):
        super().__init__(f"Pole encountered: {expression} = 0")


class PrecisionError(QDedekindException):
    """Raised when p-adic precision is exhausted"""
    def __init__(self, message: str = "p-adic precision exhausted"):
        super().__init__(message)


class InvariantViolationError(QDedekindException):
    """Raised when two independent evaluation paths disagree"""
    def __init__(self, message: str):
        super().__init__(message)
