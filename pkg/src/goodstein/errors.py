"""Exception hierarchy shared by every module of the package."""


class GoodsteinError(Exception):
    pass


class InvalidBase(GoodsteinError, ValueError):
    pass


class InvalidInput(GoodsteinError, ValueError):
    pass


class SystemViolation(GoodsteinError, ValueError):
    """A term uses a constructor the notation system does not allow."""


class TermSyntaxError(GoodsteinError, ValueError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f" (expected one of: {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class ResourceLimit(GoodsteinError):
    pass


class BadDecomposition(GoodsteinError, ValueError):
    pass


class CapExceeded(GoodsteinError):
    pass


class CertificateViolation(GoodsteinError):
    def __init__(self, step: int, message: str):
        self.step = step
        super().__init__(f"step {step}: {message}")


class StrategyError(GoodsteinError):
    pass


class EmptySet(GoodsteinError, ValueError):
    pass


class StepLimit(GoodsteinError):
    pass
