"""Exception types shared across the pipeline."""


class CppgenError(Exception):
    """Base class for all pipeline errors."""


class TaxonomyError(CppgenError):
    """Invalid taxonomy definition (bad file, duplicate icon ids, ...)."""


class MalformedDocument(CppgenError):
    """Policy HTML yielded no usable text blocks."""


class PortUnavailable(CppgenError):
    """A remote capability endpoint is configured but unreachable."""


class ImageDecodeError(CppgenError):
    """Screenshot bytes could not be decoded as an image."""


class ImageEncodeError(CppgenError):
    """Overlay image could not be encoded."""


class MissingSegment(CppgenError):
    """A detected context's data type has no segment entry."""


class DegenerateSegment(CppgenError):
    """Segment similarity asked for a side with zero non-empty phrases."""


class DatasetSchemaError(CppgenError):
    """Evaluation dataset violates the on-disk schema.

    Carries the offending path and, when known, the bad field so the CLI
    can print actionable diagnostics.
    """

    def __init__(self, message: str, path: str | None = None, field: str | None = None):
        self.path = path
        self.field = field
        detail = message
        if path:
            detail += f" [file: {path}]"
        if field:
            detail += f" [field: {field}]"
        super().__init__(detail)


class ConfigError(CppgenError):
    """Pipeline configuration out of range or unparseable."""
