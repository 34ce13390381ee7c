"""Exception types shared across the package."""


class CY3Error(Exception):
    """Base class for all package-specific errors."""


class GeometryMismatch(CY3Error):
    """Operands belong to different geometries."""


class StructuralError(CY3Error):
    """The geometry lacks a structural prerequisite (e.g. Picard rank > 1)."""


class DataConsistencyError(CY3Error):
    """Input data contradicts an identity that must hold for honest geometry.

    Raised loudly instead of returning a silently wrong value, e.g. a
    non-integer Euler characteristic for integral inputs, or a class that
    violates the Hodge-index sign constraint.
    """


class GeometryParseError(CY3Error):
    """A geometry definition file is malformed."""


class GeometryValidationError(CY3Error):
    """A geometry fails structural validation."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        detail = "; ".join(v.message for v in self.violations)
        super().__init__(f"geometry validation failed: {detail}")


class NotAmpleError(CY3Error):
    """A polarization violates the configured ample cone."""

    def __init__(self, form):
        self.form = form
        super().__init__(f'class is not ample: violates "{form.label}"')
