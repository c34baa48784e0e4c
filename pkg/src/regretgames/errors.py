"""Exception hierarchy shared by the solvers and the command line."""


class RegretGamesError(Exception):
    """Base class for every error raised by this package."""


class ArenaError(RegretGamesError, ValueError):
    """The input arena (or play) violates a precondition."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class StrategyError(RegretGamesError):
    """A strategy is undefined, or proposes an illegal move, on a reached position."""


class ResourceLimitError(RegretGamesError, RuntimeError):
    """A construction would exceed a configured size limit."""

    def __init__(self, message, limit=None, required=None):
        super().__init__(message)
        self.limit = limit
        self.required = required
