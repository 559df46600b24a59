"""Exception hierarchy shared by all cohwit modules."""


class CohwitError(Exception):
    """Base class for all errors raised by cohwit."""


class InvalidOperator(CohwitError):
    """Operator violates a structural invariant (shape, finiteness, hermiticity, ...)."""


class InvalidState(CohwitError):
    """State vector or density matrix violates a normalization/positivity invariant."""


class InvalidDimension(CohwitError):
    """Requested dimension or qubit count is out of range."""


class InvalidParameter(CohwitError):
    """Scalar parameter (mixing weight, tolerance, ...) is out of range."""


class DimensionError(CohwitError):
    """Operands have incompatible dimensions."""


class UncertifiedWitness(CohwitError):
    """Operation requires a certified witness but the certification test failed."""


class DegeneracyAmbiguous(CohwitError):
    """Eigenvalue clustering produced a chain wider than the grouping tolerance."""


class FileFormatError(CohwitError):
    """A matrix/vector/measurement document violates the file format contract."""
