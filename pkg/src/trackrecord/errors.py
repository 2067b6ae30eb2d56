"""Exception types shared across the package."""


class TrackRecordError(Exception):
    """Base class for all domain errors."""


class ValidationError(TrackRecordError):
    """Input violates a documented constraint (bad ORCID, bad role, start > end, ...)."""


class PermissionDeniedError(TrackRecordError):
    """Actor is not allowed to perform the operation."""


class NotFoundError(TrackRecordError):
    """Referenced profile, entry, or work does not exist."""


class ConflictError(TrackRecordError):
    """Resource already exists."""


class InconsistencyError(TrackRecordError):
    """Inputs that must agree do not (e.g. a listed work has no score row)."""


class SourceFormatError(TrackRecordError):
    """A source file is mostly unparseable; it is probably not an ingestion file."""


class ArtifactError(TrackRecordError):
    """A pipeline artifact (graph dump, scores CSV) is missing fields or corrupt."""


class StoreError(TrackRecordError):
    """The profile store file cannot be loaded; no partial state is kept."""


class ConfigError(TrackRecordError):
    """Service configuration file is malformed or incomplete."""
