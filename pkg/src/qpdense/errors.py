"""Exception types shared across the toolkit."""


class QpdenseError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(QpdenseError):
    """Point or coefficient vector has the wrong length."""


class ZeroFormError(QpdenseError):
    """Operation requires a non-zero form or polynomial."""


class BothZeroError(QpdenseError):
    """Resultant of two zero polynomials is undefined."""


class ConstantPolynomialError(QpdenseError):
    """Discriminant requires degree at least one."""


class NotARootError(QpdenseError):
    """Hensel lifting started from a residue that is not a root mod p."""


class DerivativeVanishesError(QpdenseError):
    """Hensel lifting requires a non-vanishing derivative mod p."""


class NonCoprimeFactorsError(QpdenseError):
    """Factor lifting requires coprime seed factors mod p."""


class PrecisionInsufficientError(QpdenseError):
    """Working precision too small to separate p-adic roots; raise k."""


class BudgetExceededError(QpdenseError):
    """An enumeration would exceed the configured budget."""


class DegenerateSpecializationError(QpdenseError):
    """Specialization has zero discriminant; choose other values."""


class CharacteristicDividesDegreeError(QpdenseError):
    """Order over F_p is unreliable when p divides deg(F)."""


class ParameterError(QpdenseError):
    """A family parameter violates its defining constraints."""


class ParseError(QpdenseError):
    """Form expression syntax error, with source position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonHomogeneousError(QpdenseError):
    """Parsed polynomial is not homogeneous; reports two offending monomials."""

    def __init__(self, mono_a: str, deg_a: int, mono_b: str, deg_b: int):
        super().__init__(
            f"not homogeneous: monomial {mono_a} has degree {deg_a} "
            f"but {mono_b} has degree {deg_b}"
        )
        self.monomials = (mono_a, mono_b)
