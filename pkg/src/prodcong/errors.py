"""Exception types shared across the toolkit."""


class ProdcongError(Exception):
    """Base class for all toolkit errors."""


class DomainError(ProdcongError, ValueError):
    """A precondition on inputs was violated (CLI exit code 2)."""


class ResourceError(ProdcongError, RuntimeError):
    """A dense table or enumeration would exceed its configured cap (exit code 4)."""


class NotRepresentableError(ProdcongError):
    """A target residue is provably outside the reachable subgroup (exit code 3).

    Carries the power-residue index of the stabilized subgroup so callers can
    classify why the target is unreachable.
    """

    def __init__(self, message: str, ell: int | None = None):
        super().__init__(message)
        self.ell = ell
