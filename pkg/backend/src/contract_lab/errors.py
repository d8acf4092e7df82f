"""
Exception hierarchy for contract analytics.

Every failure raised by the package derives from ContractLabError so the CLI can
map it to an exit code in one place.
"""

from typing import Optional


class ContractLabError(Exception):
    """Base class for all package errors."""


class InvalidParameters(ContractLabError):
    """A market parameter violates a hard range constraint."""

    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        message = f"invalid parameters: {constraint}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class NoViableMargin(InvalidParameters):
    """r - k <= c: the first-best capacity collapses to zero."""

    def __init__(self, detail: str = ""):
        super().__init__("viable_margin", detail)


class DomainError(ContractLabError):
    """Argument outside the domain of a Lambert W branch."""

    def __init__(self, x: float, branch: str):
        self.x = x
        self.branch = branch
        super().__init__(f"x={x!r} outside the domain of the {branch} branch")


class ClosedFormUnavailable(ContractLabError):
    """The closed form does not apply; callers fall back to numerics."""


class ReservationTooHigh(ContractLabError):
    """Reservation profit exceeds the first-best profit, so the penalty would be negative."""


class ParticipationViolated(ContractLabError):
    """Wholesale price below the effective unit cost c + k."""


class SolverError(ContractLabError):
    """Base class for univariate solver failures."""


class NoSignChange(SolverError):
    """Bisection bracket does not straddle a root."""


class BracketFailure(SolverError):
    """A contract-level root search found no sign change on its economic bracket."""


class MaxIterExceeded(SolverError):
    """Solver hit its iteration cap before reaching tolerance."""


class ParseError(ContractLabError):
    """Scenario file could not be parsed."""

    def __init__(self, message: str, line: int = 0, column: int = 0, path: Optional[str] = None):
        self.line = line
        self.column = column
        self.path = path
        where = f"{path or '<scenario>'}:{line}:{column}"
        super().__init__(f"{where}: {message}")


class UnknownFigure(ContractLabError):
    """Figure identifier not recognised."""


class GridTooLarge(ContractLabError):
    """Experiment grid exceeds the configured cell cap."""
