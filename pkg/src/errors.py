"""Named errors raised by the tightsr library.

Every mathematical precondition failure derives from ``TightSRError`` so the
CLI can map it to a single exit code.
"""


class TightSRError(Exception):
    """Base class for violated mathematical preconditions."""
    pass


class GhostVertex(TightSRError):
    """Raised when a ground-set vertex lies in no facet."""
    pass


class BadVertex(TightSRError):
    """Raised when a vertex index is outside 1..m."""
    pass


class NotAFace(TightSRError):
    """Raised when a link or star is requested for a non-face."""
    pass


class TooLarge(TightSRError):
    """Raised when an input exceeds a configured size cap."""
    pass


class TooManyGenerators(TightSRError):
    """Raised when the Taylor oracle would need too many generators."""
    pass


class BadArity(TightSRError):
    """Raised when a multiplicity vector does not match the ground set."""
    pass


class BadField(TightSRError):
    """Raised when a field specification is not Q or a prime field."""
    pass


class NotASubcomplex(TightSRError):
    """Raised when a face of L does not map to a face of Y."""
    pass


class VertexSetMismatch(TightSRError):
    """Raised when an essential germ is asked for with V(L) != V(Y)."""
    pass


class NotAGerm(TightSRError):
    """Raised when extend is called on a pair that is not a wt-germ."""
    pass


class NotWeaklyTight(TightSRError):
    """Raised when an operation requires a weakly tight complex."""
    pass


class VertexNotMdim(TightSRError):
    """Raised when a vertex is not in V_mdim(K)."""
    pass


class FacetFormatError(ValueError):
    """Raised when a facet-format line cannot be parsed."""
    pass
