"""Exception hierarchy shared across the package."""


class StructuralError(ValueError):
    """Mismatched shapes or frames; indicates lattice bookkeeping went wrong."""


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class ValidationError(ValueError):
    """Input data violates a structural invariant; message carries a witness."""


class ResourceLimitError(RuntimeError):
    """An enumeration exceeded its configured cap."""
