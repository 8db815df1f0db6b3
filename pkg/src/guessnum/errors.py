"""Exception types shared across the toolkit."""


class GuessnumError(Exception):
    """Base class for all toolkit errors."""


class LoopEdge(GuessnumError):
    """An edge from a vertex to itself was supplied."""


class VertexOutOfRange(GuessnumError):
    """An edge references a vertex id outside 0..n-1."""


class BadParams(GuessnumError):
    """A constructor or family was called with invalid parameters."""


class SizeGuard(GuessnumError):
    """An exact computation would exceed its size guard.

    ``needed`` is the size the computation requires, ``guard`` the
    configured limit.  Raise the guard explicitly to proceed.
    """

    def __init__(self, message, needed=None, guard=None):
        super().__init__(message)
        self.needed = needed
        self.guard = guard


class AlphabetMismatch(GuessnumError):
    """A configuration does not fit the handle's (n, s) shape."""


class NotIndependent(GuessnumError):
    """A configuration set contains a conflicting pair.

    The offending pair of configuration codes is stored in ``pair``.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NonPrimeField(GuessnumError):
    """A field operation was requested for a non-prime modulus."""


class DivisionByZeroPoly(GuessnumError):
    """Polynomial division by the zero polynomial."""


class BadGenerator(GuessnumError):
    """A polynomial unfit to generate a digraph (zero constant term)."""


class SelfDemandLoop(GuessnumError):
    """A network instance wires a source directly to its own sink."""


class InvalidInstance(GuessnumError):
    """A network instance violates the circuit-representation invariants."""


class NotAcyclic(GuessnumError):
    """A vertex set expected to induce an acyclic subgraph does not."""
