class AlphaSpectraError(Exception):
    """Base class of all domain errors raised by alphaspectra"""


class DisconnectedGraph(AlphaSpectraError):
    """Raised when an operation that requires a connected graph gets a disconnected one"""


class TreeHasNoBase(AlphaSpectraError):
    """Raised when the base of an acyclic graph is requested"""


class VertexOutOfRange(AlphaSpectraError, ValueError):
    """Raised when a vertex label is not in 0..n-1"""


class AlphaOutOfRange(AlphaSpectraError, ValueError):
    """Raised when alpha is not in [0, 1]"""


class NoConvergence(AlphaSpectraError):
    """Raised when the power iteration exhausts its iteration budget"""

    def __init__(self, max_iters: int, residual: float):
        super().__init__(
            f"Power iteration did not converge in {max_iters} iterations (residual {residual:.3e})"
        )
        self.max_iters = max_iters
        self.residual = residual


class NotUnitVector(AlphaSpectraError):
    """Raised when a vector that must have unit 2-norm does not"""


class ClosedFormMismatch(AlphaSpectraError):
    """Raised when a closed-form polynomial identity disagrees with direct arithmetic"""


class IndexOutOfRange(AlphaSpectraError, ValueError):
    """Raised when a tabulated polynomial index is outside its table"""


class InvalidFamilyParams(AlphaSpectraError, ValueError):
    """Raised when family parameters violate the family's constraints"""


class InvalidMoveSet(AlphaSpectraError):
    """Raised when a graft move set is empty or not contained in N(v) minus N[u]"""


class NotACutEdge(AlphaSpectraError):
    """Raised when an edge that must be a bridge lies on a cycle"""


class SwitchConflict(AlphaSpectraError):
    """Raised when a 2-switch would create a multi-edge or its vertices coincide"""


class EdgeNotFound(AlphaSpectraError):
    """Raised when an edge is not present in the graph"""


class InvalidShift(AlphaSpectraError):
    """Raised when pendant path shifting parameters violate k - l >= 2 or uv in E"""


class CapExceeded(AlphaSpectraError):
    """Raised when an enumeration order exceeds the configured cap"""


class EmptySpace(AlphaSpectraError):
    """Raised when a search space contains no graph"""


class GapBelowResolution(AlphaSpectraError):
    """Raised when two spectral radii cannot be ordered within their certified error"""

    def __init__(self, gap: float, bound: float):
        super().__init__(
            f"Radius gap {gap:.3e} is below the certified resolution {bound:.3e}"
        )
        self.gap = gap
        self.bound = bound


class InvalidGraph6(AlphaSpectraError, ValueError):
    """Raised when a graph6 string cannot be decoded"""
