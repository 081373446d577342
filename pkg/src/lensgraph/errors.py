"""Domain error types shared across the package."""


class LensGraphError(Exception):
    """Base class for lensgraph domain errors."""


class GraphFormatError(LensGraphError):
    """Malformed or inconsistent graph input."""


class AttributeSelectionError(LensGraphError):
    """Attribute selection is empty, unknown, or has no usable columns."""


class UnknownNodeError(LensGraphError):
    """Reference to a node id that does not exist in the graph."""


class ProtocolError(LensGraphError):
    """Malformed wire command or a command invalid in the current state."""
