"""Exception types shared across the toolchain."""


class SizeMismatchError(ValueError):
    """Raster operands do not share the dimensions the operation requires."""


class PlacementError(ValueError):
    """A sprite does not fit on the requested canvas."""


class ControlDecodeError(ValueError):
    """A control map could not be decoded back into motion parameters."""


class ManifestFormatError(ValueError):
    """A manifest file is malformed or carries an unsupported schema version."""


class ClipFormatError(ValueError):
    """A stored clip directory is inconsistent with its sidecar metadata."""
