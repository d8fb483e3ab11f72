"""Exception hierarchy shared by all flagkin modules."""


class FlagkinError(Exception):
    """Base class for all flagkin errors."""


class UnitMismatch(FlagkinError):
    """Adding scalars whose formal unit monomials differ."""


class DivisionByZero(FlagkinError):
    """Division by the zero scalar."""


class NonSigmaInput(FlagkinError):
    """Hodge star applied to a multivector with omega or rho factors."""


class RhoOrdering(FlagkinError):
    """Wedge would move a rho marker across other generators."""


class IndexOutOfRange(FlagkinError):
    """An index lies outside the range permitted by the ambient dimension."""


class DimensionMismatch(FlagkinError):
    """Operands live over different ambient dimensions."""


class NotHomogeneous(FlagkinError):
    """Operation requires a homogeneous element."""


class SolveFailure(FlagkinError):
    """An exact linear solve was inconsistent or under-determined."""


class BadIndexSet(FlagkinError):
    """Malformed index sequence for a rotation measure."""


class ExceptionalUnavailable(FlagkinError):
    """Exceptional element requested outside the odd, p == q case."""


class NotInSubalgebra(FlagkinError):
    """Element does not lie in the span of the invariant subalgebra basis."""


class DegreeMismatch(FlagkinError):
    """Pairing operands have incompatible degrees."""


class ValidationError(FlagkinError):
    """Bad request arguments (CLI layer)."""
