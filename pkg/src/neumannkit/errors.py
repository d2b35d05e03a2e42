"""Exception types raised by the library."""


class NeumannKitError(Exception):
    """Base class for all library errors."""


class DomainError(NeumannKitError, ValueError):
    """A point lies outside the (open) domain, or a parameter such as a
    radius or dimension is out of range."""


class SingularityError(NeumannKitError, ValueError):
    """A kernel or potential was evaluated exactly at a singular point."""


class ConvergenceError(NeumannKitError, RuntimeError):
    """A truncated series could not reach the requested tolerance within
    its term budget."""


class ConfigurationError(NeumannKitError, ValueError):
    """A charge configuration violates one of its invariants; the message
    names the violated invariant."""
