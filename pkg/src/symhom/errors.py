"""Shared exception types.

The command line front end maps these onto exit codes: validation and
domain problems exit with status 2, resource-guard aborts with status 3.
"""


class DomainError(ValueError):
    """An argument is outside the domain of the requested operation."""


class CompositionError(DomainError):
    """Source/target mismatch when composing morphisms."""


class ValidationError(ValueError):
    """Structured input (algebra description, matrix file, ...) violates an axiom.

    The message always names the axiom or field that failed.
    """


class AugmentationError(ValidationError):
    """An augmentation is missing or is not an algebra map where one is required."""


class TruncationError(RuntimeError):
    """A chain complex is too short to answer the requested homological degree."""


class ResourceGuardError(RuntimeError):
    """A computation was aborted because it exceeded a configured size cap."""
