"""Exception types raised across the package."""


class SchemeError(Exception):
    """Base class for all library errors."""


class NonSquare(SchemeError):
    pass


class AxiomViolation(SchemeError):
    def __init__(self, axiom, witness=None, message=""):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"axiom {axiom} violated (witness={witness!r})")


class InconsistentCounts(SchemeError):
    pass


class IrrationalEigenvalues(SchemeError):
    pass


class SingularQ(SchemeError):
    pass


class NotBijective(SchemeError):
    pass


class NotMonomialOrder(SchemeError):
    pass


class DimensionMismatch(SchemeError):
    pass


class BadCoords(SchemeError):
    pass


class LabelingMismatch(SchemeError):
    pass


class SingularTransition(SchemeError):
    pass


class ConsistencyFailure(SchemeError):
    pass


class TrivialClosedSubset(SchemeError):
    pass


class SearchSpaceTooLarge(SchemeError):
    pass


class TooManyClasses(SchemeError):
    pass


class DualMismatch(SchemeError):
    pass


class OrderNotBlockType(SchemeError):
    pass


class OrderNotEliminationType(SchemeError):
    pass


class DomainSplitMismatch(SchemeError):
    pass


class NotClosed(SchemeError):
    pass


class ZeroFactor(SchemeError):
    pass


class TheoremViolation(SchemeError):
    """An identity that is guaranteed for valid inputs failed to hold."""


class SizeMismatch(SchemeError):
    pass


class PairingNotBijective(SchemeError):
    pass


class NotDistanceRegular(SchemeError):
    pass


class BadParameters(SchemeError):
    pass
