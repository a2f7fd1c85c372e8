"""Exception hierarchy."""


class ToeplitzHankelError(Exception):
    """Base class for all errors raised by this package."""


class PoleOnCircle(ToeplitzHankelError, ValueError):
    """A symbol has a pole on (or too close to) the unit circle."""


class ZeroOrPoleOnCircle(ToeplitzHankelError, ValueError):
    """A symbol has a zero or pole on the unit circle, so its Toeplitz
    operator is not Fredholm."""


class RootFindingFailure(ToeplitzHankelError, ArithmeticError):
    pass


class NotMatching(ToeplitzHankelError, ValueError):
    pass


class SignatureIndeterminate(ToeplitzHankelError, ArithmeticError):
    pass


class IndexPositive(ToeplitzHankelError, ValueError):
    pass


class IndexNegative(ToeplitzHankelError, ValueError):
    pass


class KappaNonpositive(ToeplitzHankelError, ValueError):
    pass


class WrongCase(ToeplitzHankelError, ValueError):
    pass


class NotHardy(ToeplitzHankelError, ValueError):
    """A right-hand side or candidate solution is not analytic in the disk."""


class ConstraintSystemSingular(ToeplitzHankelError, ArithmeticError):
    pass
