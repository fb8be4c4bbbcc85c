"""Exception hierarchy shared by every module."""


class FrontalError(Exception):
    """Base class for all library errors."""


class OrderMismatch(FrontalError, ValueError):
    """Two jets with different truncation orders were combined."""


class TruncationExhausted(FrontalError, ValueError):
    """An operation would leave no known coefficients."""


class NotAUnit(FrontalError, ArithmeticError):
    """Inversion of a jet whose constant term vanishes."""


class NeedsNumericMode(FrontalError, ArithmeticError):
    """An exact computation needs an irrational number."""


class NotDivisible(FrontalError, ArithmeticError):
    """Exact division by t (or s) of a jet that lacks the factor."""


class NotOriginPreserving(FrontalError, ValueError):
    """A substitution jet has a nonzero constant term."""


class FrameUndefined(FrontalError, ValueError):
    """The curvature of the singular curve vanishes at the origin."""


class SpecValidationError(FrontalError, ValueError):
    """A surface specification is malformed."""


class NonCriticalGerm(FrontalError, ValueError):
    """A function germ has a nonzero linear part."""


class PreconditionError(FrontalError, ValueError):
    """Input does not satisfy an operation's documented precondition."""


class OrderTooLow(FrontalError, ValueError):
    """The jet is too short to decide the requested criterion."""


class TableInapplicable(FrontalError, ValueError):
    """The closed-form unfolding table only covers cuspidal cross caps."""


class DegenerateLocus(FrontalError, ArithmeticError):
    """The implicit-function step for the singular locus is not available."""


class ConditionDegenerate(FrontalError, ArithmeticError):
    """A closed-form witness has a vanishing denominator."""


class InternalInconsistency(FrontalError, RuntimeError):
    """A structural invariant of the computation failed."""
