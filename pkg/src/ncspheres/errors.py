"""Shared exception types."""


class NCSphereError(Exception):
    """Base class for all library errors."""


class SizeLimitError(NCSphereError):
    """An enumeration or saturation bound was exceeded."""


class FrameError(NCSphereError):
    """Two diagrams (or a diagram and a tuple) live on incompatible leg frames."""


class PartitionClassError(NCSphereError):
    """A partition does not belong to the class required by an operation."""


class SingularGramError(NCSphereError):
    """The Gram matrix is not invertible at this dimension."""

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        super().__init__(f"Gram matrix on {k} legs is singular at N={n}")


class DomainError(NCSphereError):
    """Numeric input outside the domain of a model constructor."""
