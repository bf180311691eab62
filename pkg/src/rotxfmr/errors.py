"""Exception types raised across the package."""


class RotxfmrError(Exception):
    """Base class for all errors raised by rotxfmr."""


class GeometryError(RotxfmrError, ValueError):
    """A transformer geometry violates one or more invariants.

    ``violations`` holds ``(name, message)`` pairs, one per broken invariant.
    Names are ``NonPositiveDimension``, ``RadialTilingMismatch`` and
    ``FringeRadiusDegenerate``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(self.report())

    @property
    def names(self):
        return sorted({name for name, _ in self.violations})

    def report(self):
        return "\n".join(f"{name}: {msg}" for name, msg in self.violations)


class GeometryWarning(UserWarning):
    """Geometry is valid but outside the range the model was built for."""


class LogDomainError(RotxfmrError, ValueError):
    """A logarithm argument in a reluctance formula is not positive."""


class ZeroReluctanceError(RotxfmrError, ValueError):
    pass


class OutOfRangeError(RotxfmrError, ValueError):
    pass


class NegativeLeakageError(RotxfmrError, ValueError):
    """Integrated leakage came out negative, i.e. the coupling exceeds one."""


class SingularAtDCError(RotxfmrError, ZeroDivisionError):
    pass


class EmptyReferenceError(RotxfmrError, ValueError):
    pass


class UnitMismatchError(RotxfmrError, ValueError):
    pass


class ExtrapolationError(RotxfmrError, ValueError):
    pass
