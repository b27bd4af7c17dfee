"""Exception types shared across the toolkit."""


class YbxError(Exception):
    """Base class for all toolkit errors."""


class DimMismatch(YbxError, ValueError):
    """Operands have incompatible shapes."""


class NotHermitian(YbxError, ValueError):
    """Matrix deviates from Hermiticity beyond tolerance."""


class NotNormalized(YbxError, ValueError):
    """State vector norm deviates from 1 beyond tolerance."""


class NotUnitary(YbxError, ValueError):
    """Matrix deviates from unitarity beyond tolerance."""


class IndexOutOfRange(YbxError, IndexError):
    """Cyclic shift index outside [0, d)."""


class WrongAngleCount(YbxError, ValueError):
    """Product-state angle vector has the wrong length (must be d - 2)."""


class UnknownCurve(YbxError, ValueError):
    """Contour name is not one of OB, OG, GB."""


class EmptyEnsemble(YbxError, ValueError):
    """Coverage scoring requires nonempty sample sets."""


class NoSolutionFound(YbxError, RuntimeError):
    """Inverse parameter search exhausted its budget.

    Carries the best parameters found and the residual they achieve so the
    caller can log diagnostics instead of aborting.
    """

    def __init__(self, message, best_params=None, residual=None):
        super().__init__(message)
        self.best_params = best_params
        self.residual = residual
