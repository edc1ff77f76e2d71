"""Exception types raised across the package."""


class PeterWeylError(Exception):
    """Base class for all package errors."""


class ConductorOverflowError(PeterWeylError, ArithmeticError):
    pass


class GroupMismatchError(PeterWeylError, ValueError):
    pass


class UnsupportedGroupError(PeterWeylError, ValueError):
    pass


class IncompleteRepresentationListError(PeterWeylError, ValueError):
    pass


class SplittingError(PeterWeylError, ArithmeticError):
    """Exact eigen-splitting over the working cyclotomic field failed."""


class NormalizationError(PeterWeylError, ValueError):
    pass


class IncompleteOrbitError(PeterWeylError, ValueError):
    pass


class ModuleAxiomError(PeterWeylError, ValueError):
    pass


class NotCentralError(PeterWeylError, ValueError):
    pass


class InvolutionHypothesisError(PeterWeylError, ValueError):
    pass


class NotStarFixedError(PeterWeylError, ValueError):
    pass


class FormError(PeterWeylError, ValueError):
    """Degenerate or non-invariant Hermitian form."""


class CertificateError(PeterWeylError, ValueError):
    pass


class InexactDivisionError(PeterWeylError, ArithmeticError):
    pass


class BasisConversionError(PeterWeylError, ValueError):
    pass
