"""
Checks for the standing assumptions and hard ranges of MarketParams.
"""

import logging
from typing import Callable, List, Optional, Tuple

from ..errors import InvalidParameters, NoViableMargin
from .models import MarketParams, ValidationResult

LOGGER = logging.getLogger(__name__)

# (constraint name, predicate that must hold); order decides which one is reported
_HARD_CONSTRAINTS: List[Tuple[str, Callable[[MarketParams], bool]]] = [
    ("retail_price_positive", lambda p: p.r > 0),
    ("capacity_cost_positive", lambda p: p.c > 0),
    ("production_cost_nonnegative", lambda p: p.k >= 0),
    ("base_demand_nonnegative", lambda p: p.b >= 0),
    ("tail_rate_positive", lambda p: p.lam > 0),
    ("discount_in_unit_interval", lambda p: p.delta is None or 0 < p.delta < 1),
    ("reservation_nonnegative", lambda p: p.reservation >= 0),
    ("viable_margin", lambda p: p.r - p.k > p.c),
]


def _evaluate(p: MarketParams) -> ValidationResult:
    for name, holds in _HARD_CONSTRAINTS:
        if not holds(p):
            return ValidationResult(status="fatal", fatal=name)

    warnings: List[str] = []
    if not p.high_margin:
        warnings.append(
            f"high-margin violated: r-k-c={p.r - p.k - p.c:.6g} <= c={p.c:.6g}"
        )
    if not p.tail_dominance:
        warnings.append(
            f"tail-dominance violated: 1/lambda={1.0 / p.lam:.6g} < b={p.b:.6g}"
        )
    if p.c > 0 and (p.r - p.k) / p.c > 1e9:
        warnings.append("extreme (r-k)/c ratio: log-domain evaluation required")
    return ValidationResult(status="warnings" if warnings else "ok", warnings=warnings)


def validate_params(p: MarketParams) -> ValidationResult:
    """
    Check hard ranges (fatal) and the two standing assumptions (warnings).

    Assumption violations are logged once here; analysis functions re-check quietly.

    Examples:
        >>> validate_params(MarketParams(r=1e7, c=1e5, k=0, b=50, lam=0.01)).status
        'ok'
    """
    result = _evaluate(p)
    for message in result.warnings:
        LOGGER.warning(message)
    if result.fatal:
        LOGGER.error("fatal parameter constraint: %s", result.fatal)
    return result


def require_valid(p: MarketParams, need_discount: bool = False) -> ValidationResult:
    """
    Quiet validate_params that raises on fatal results.

    Raises:
        NoViableMargin: If r - k <= c
        InvalidParameters: If another hard constraint fails, or if need_discount and delta is unset
    """
    result = _evaluate(p)
    if result.fatal == "viable_margin":
        raise NoViableMargin(f"r-k={p.r - p.k:.6g} <= c={p.c:.6g}")
    if result.status == "fatal":
        raise InvalidParameters(result.fatal or "unknown")
    if need_discount and p.delta is None:
        raise InvalidParameters("discount_in_unit_interval", "delta is required for multi-generation analysis")
    return result


def assumption_notes(result: Optional[ValidationResult]) -> List[str]:
    """Warnings formatted for an OutcomeReport's notes."""
    if result is None:
        return []
    return [f"assumption: {w}" for w in result.warnings]
