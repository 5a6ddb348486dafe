"""Shared exception types."""


class DomainError(ValueError):
    """An argument falls outside an operation's documented domain."""


class BuildError(RuntimeError):
    """A realization bracket left the declared span, or a builder
    consistency assertion failed."""


class ParseError(ValueError):
    """Malformed or invariant-violating serialized input."""


class InconclusiveError(RuntimeError):
    """The polynomial solver exceeded one of its configured caps."""
