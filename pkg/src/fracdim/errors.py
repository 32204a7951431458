"""Exception hierarchy shared by every fracdim module."""


class FracdimError(Exception):
    """Base class; the CLI maps these to exit status 2."""


class ParameterOutOfRange(FracdimError, ValueError):
    pass


class GapConditionViolated(FracdimError, ValueError):
    def __init__(self, n, gap, a_min):
        self.n = n
        self.gap = gap
        self.a_min = a_min
        super().__init__(
            f"gap condition fails at n={n}: (k_{n + 1} - k_{n}) * min(a1, a2) = "
            f"{gap} * {a_min} = {gap * a_min} <= 1"
        )


class NonIncreasingSchedule(FracdimError, ValueError):
    pass


class DepthExceeded(FracdimError, IndexError):
    pass


class CapExceeded(FracdimError):
    pass


class OutOfEnvelopeRange(FracdimError, ValueError):
    pass


class ScheduleMismatch(FracdimError, ValueError):
    pass


class LevelExceedsTruncation(FracdimError, ValueError):
    pass


class ConstraintViolated(FracdimError, ValueError):
    pass


class DegenerateLambda(ConstraintViolated):
    pass


class ParseError(FracdimError, ValueError):
    pass
