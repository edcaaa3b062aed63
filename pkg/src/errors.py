"""Exception hierarchy for the curve analyzer.

Library code raises these; only ``src.cli`` turns them into exit codes.
"""


class CurveError(Exception):
    """Root of every error raised by this package."""


class CurveValidationError(CurveError, ValueError):
    """Invalid input: the CLI maps this family to exit code 2."""


class ConfigurationError(CurveValidationError):
    pass


class PolynomialDegreeError(CurveValidationError):
    pass


class ZeroPolynomialError(CurveValidationError):
    pass


class ChainValidationError(CurveValidationError):
    pass


class TwoChainValidationError(CurveValidationError):
    pass


class DegenerateChainError(CurveValidationError):
    pass


class NotAllOddError(CurveValidationError):
    pass


class ConditionNotMetError(CurveValidationError):
    pass


class RollingSpecError(CurveValidationError):
    pass


class NotACycloidError(CurveValidationError):
    pass


class IrrationalRatioError(CurveValidationError):
    pass


class TorusKnotSpecError(CurveValidationError):
    pass


class HelixSpecError(CurveValidationError):
    pass


class NotSPeriodicError(CurveValidationError):
    pass


class NonRationalAlphaError(CurveValidationError):
    pass


class IdentityOperatorError(CurveValidationError):
    pass


class OracleConfigError(CurveValidationError):
    pass


class NoConvergenceError(CurveError, ArithmeticError):
    """An iterative refinement did not reach its tolerance."""


class VerificationMismatch(CurveError):
    """Analytic and numeric feature sets disagree (CLI exit code 3)."""


class InvariantError(CurveError):
    """A structural property the analysis guarantees did not hold."""
