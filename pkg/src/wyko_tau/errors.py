"""Exception types raised by wyko-tau.

Argument errors are plain ``ValueError``; the subclasses below let callers
(and the CLI) tell apart the more specific failure modes.
"""


class RangeError(ValueError):
    """An angle lies outside the family's parameter range."""


class DomainError(ValueError):
    """A formula was applied outside the domain it is established for."""


class ConsistencyError(RuntimeError):
    """A computed quantity violated an internal numerical invariant."""
