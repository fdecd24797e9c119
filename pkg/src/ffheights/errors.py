"""Exception types raised by the ffheights package."""


class HeightsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HeightsError):
    """Malformed input text; carries 1-based line/column of the offending token."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ZeroDenominator(HeightsError):
    """Denominator of a rational function is the zero polynomial."""


class ZeroPolynomial(HeightsError):
    """Operation undefined on the zero polynomial."""


class ZeroFunction(HeightsError):
    """Valuation/divisor of the zero function is not representable."""


class FieldMismatch(HeightsError):
    """Operands live over different prime fields."""


class SingularModel(HeightsError):
    """Weierstrass model has vanishing discriminant."""


class UnsupportedCharacteristic(HeightsError):
    """Residue characteristic below 5 is out of scope."""


class NotAPthPower(HeightsError):
    """Element or curve coefficient is not a p-th power in F_p(t)."""


class NotFinitePoint(HeightsError):
    """A finite (affine, torsion) point was required."""


class BadOrder(HeightsError):
    """Kernel generator has an order the operation does not accept."""


class NotTorsionWithinBound(HeightsError):
    """Point order exceeds the configured torsion search bound."""


class WrongOrder(HeightsError):
    """Point order does not match the order required by a construction."""


class IsotrivialSource(HeightsError):
    """Isogeny-chain bookkeeping needs a non-isotrivial (hence ordinary) source."""


class IsotrivialInput(HeightsError):
    """Verifier input must be non-isotrivial."""


class IncomposableSteps(HeightsError):
    """Consecutive isogeny steps do not share a curve."""


class CurveMismatch(HeightsError):
    """Subgroups or points attached to different curves."""


class SemistabilityRequired(HeightsError):
    """Statement only holds for semi-stable curves; input is not semi-stable."""


class NotUniformPlan(HeightsError):
    """Plan does not apply one common action to every factor."""
