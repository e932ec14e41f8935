"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for geometric/numeric domain violations."""


class DomainError(GeometryError):
    """An operation was called outside its mathematical domain."""


class ConstructionError(GeometryError):
    """A block or pants could not be built from the given lengths."""


class ExtractionError(GeometryError):
    """Deformed Fenchel-Nielsen data could not be extracted."""


class UnboundedNormError(GeometryError):
    """A norm estimate is unbounded where a finite one is required."""


class ConfigError(ValueError):
    """A configuration file or expression failed to parse or validate."""
