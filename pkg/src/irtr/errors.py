"""Exception hierarchy shared by every module of the package."""


class IrtrError(ValueError):
    """Base class for all domain errors raised by :mod:`irtr`."""


# numerics
class NoFiniteValue(IrtrError):
    pass


class NoBracket(IrtrError):
    pass


class InvalidVariance(IrtrError):
    pass


class NonFiniteIntegrand(IrtrError):
    pass


# model
class DegenerateDevice(IrtrError):
    pass


# quantum_info
class OutOfRangeMu(IrtrError):
    pass


class DegenerateTensor(IrtrError):
    pass


class CrbViolation(IrtrError):
    """A classical Fisher information exceeds the quantum one."""


# tradeoff
class InvalidErrorPoint(IrtrError):
    pass


# protocol
class DenominatorZero(IrtrError):
    """The measurement degenerates at this phase (D(phi) == 0)."""


class InsufficientSamples(IrtrError):
    pass


class ZeroInformation(IrtrError):
    pass
