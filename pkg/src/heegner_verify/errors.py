"""Exception hierarchy shared by all layers of the toolkit."""


class VerifyError(Exception):
    """Base class for all toolkit errors."""


class BoundExceeded(VerifyError):
    """An exact computation exceeded its configured budget."""


class NotCoprime(VerifyError):
    """Residue-symbol arguments share a common factor."""


class ResidueCharThree(VerifyError):
    """Cubic residue symbol requested at a place above 3."""


class Singular(VerifyError):
    """Matrix inversion attempted on a singular matrix."""


class BadPrimeClass(VerifyError):
    """Prime is not congruent to 2 or 5 mod 9."""


class WildPlace(VerifyError):
    """Tame symbol requested where the residue characteristic divides the degree."""


class ZeroArgument(VerifyError):
    """Hilbert symbol argument is zero."""


class LiftNotFound(VerifyError):
    """CRT lift search for the product formula exhausted its budget."""


class PointNotOnCurve(VerifyError):
    """Point does not satisfy the curve equation."""


class TorsionPoint(VerifyError):
    """Canonical height requested for a torsion point."""


class PrecisionBudgetExceeded(VerifyError):
    """Requested precision cannot be met within the iteration budget."""


class SignMismatch(VerifyError):
    """Derivative order inconsistent with the functional-equation sign."""


class Inconclusive(VerifyError):
    """Numeric sign determination did not agree between test points."""


class NoGenerator(VerifyError):
    """No generator of the rank-one twist was found or supplied."""


class RecognitionFailed(VerifyError):
    """Continued-fraction rational recognition failed at the given bound."""


class NotFound(VerifyError):
    """Bounded search ended without a hit (not a disproof)."""

    def __init__(self, budget):
        super().__init__(f"search budget {budget} exhausted")
        self.budget = budget


class DegenerateCert(VerifyError):
    """Cube-sum certificate with a + b = 0 has no affine curve point."""


class TorsionImage(VerifyError):
    """Certificate maps to a torsion point of the curve."""


class InvalidFamily(VerifyError):
    """Curve label outside the supported families."""


class NormalizationFailure(VerifyError):
    """No primary associate exists where one must (internal bug guard)."""
