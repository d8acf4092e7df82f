"""
Penalty-augmented wholesale contracts: OEM-optimal coordinating terms in closed form
(exponential tail) and numerically (any tail), plus the reservation-profit threshold.
"""

import logging
import math
from typing import Literal, Optional

from ..core.models import DemandModel, LumpSumPenaltyTerms, MarketParams, UnitPenaltyTerms, exponential_demand
from ..core.validation import assumption_notes, require_valid
from ..errors import BracketFailure, ClosedFormUnavailable, NoSignChange, ReservationTooHigh
from ..numerics import SolveConfig, bisect_root
from ..special import lambert_wm1_of_negexp
from .models import Enforceability, PenaltyContractSolution, SmallMarginComparison
from .wholesale import centralized_optimum, contract_profits

LOGGER = logging.getLogger(__name__)

PenaltyKind = Literal["lump_sum", "unit_penalty"]


def _enforceability(p: MarketParams, d: DemandModel, kind: PenaltyKind, w: float, penalty: float,
                    x: float) -> Enforceability:
    best_case = (w - p.k - p.c) * x
    shortfall = d.survival(x)
    if kind == "lump_sum":
        payout = penalty
    else:
        # mean units short given a shortfall; 1/lambda for an exponential tail
        payout = penalty * d.expected_shortfall(x) / shortfall if shortfall > 0 else 0.0
    ratio = payout / best_case if best_case > 0 else math.inf
    return Enforceability(
        best_case_profit=best_case,
        shortfall_probability=shortfall,
        penalty_to_best_case_ratio=ratio,
    )


def _solution(p: MarketParams, d: DemandModel, kind: PenaltyKind, w: float, penalty: float, x: float,
              notes: list) -> PenaltyContractSolution:
    if kind == "lump_sum":
        terms = LumpSumPenaltyTerms(w=w, rho=penalty)
    else:
        terms = UnitPenaltyTerms(w=w, rho1=penalty)
    pi_s, pi_m = contract_profits(p, d, terms, x)
    return PenaltyContractSolution(
        kind=kind,
        w_hat=w,
        penalty=penalty,
        capacity=x,
        supplier_profit=pi_s,
        oem_profit=pi_m,
        enforceability=_enforceability(p, d, kind, w, penalty, x),
        notes=notes,
    )


def _closed_form_price(p: MarketParams, d: DemandModel) -> float:
    """k + c + (c/(b lambda + 1)) ln((r-k)/c) + Z lambda/(b lambda + 1)."""
    m = d.base * d.rate + 1.0
    return p.k + p.c + (p.c / m) * math.log((p.r - p.k) / p.c) + p.reservation * d.rate / m


def _coordinated_closed_form(p: MarketParams, d: Optional[DemandModel], kind: PenaltyKind) -> PenaltyContractSolution:
    d = d or exponential_demand(p)
    if not d.is_exponential:
        raise ClosedFormUnavailable(f"{kind} closed form needs an exponential tail; use coordinated_penalty_numeric")
    notes = assumption_notes(require_valid(p))
    x_star, pi_star = centralized_optimum(p, d)
    if p.reservation > pi_star:
        raise ReservationTooHigh(f"Z={p.reservation:.6g} exceeds first-best profit {pi_star:.6g}")
    w_hat = _closed_form_price(p, d)
    # w + rho * lambda = r for the lump sum, w + rho1 = r per unit
    penalty = (p.r - w_hat) / d.rate if kind == "lump_sum" else p.r - w_hat
    return _solution(p, d, kind, w_hat, max(penalty, 0.0), x_star, notes)


def coordinated_lump_sum(p: MarketParams, d: Optional[DemandModel] = None) -> PenaltyContractSolution:
    """
    OEM-optimal coordinating wholesale price plus lump-sum shortfall penalty.

    The supplier is left with exactly its reservation profit Z, and builds x*.

    Raises:
        ClosedFormUnavailable: For a non-exponential tail
        ReservationTooHigh: If Z exceeds the first-best profit
    """
    return _coordinated_closed_form(p, d, "lump_sum")


def coordinated_unit_penalty(p: MarketParams, d: Optional[DemandModel] = None) -> PenaltyContractSolution:
    """Per-unit shortfall penalty counterpart of coordinated_lump_sum; rho1 = lambda * rho."""
    return _coordinated_closed_form(p, d, "unit_penalty")


def coordinated_penalty_numeric(p: MarketParams, d: DemandModel,
                                kind: PenaltyKind = "lump_sum") -> PenaltyContractSolution:
    """
    Coordinating penalty contract for any tail.

    The supplier's first-order condition at x* fixes the penalty as a function of w
    (rho = (r - w) S(x*)/f(x*) for a lump sum, rho1 = r - w per unit); bisection on w over
    [k + c, r] then sets the supplier's expected profit to Z.

    Raises:
        ReservationTooHigh: If Z exceeds the first-best profit
        BracketFailure: If the supplier profit does not change sign on [k + c, r]
    """
    notes = assumption_notes(require_valid(p))
    x_star, pi_star = centralized_optimum(p, d)
    if p.reservation > pi_star:
        raise ReservationTooHigh(f"Z={p.reservation:.6g} exceeds first-best profit {pi_star:.6g}")

    if kind == "lump_sum":
        hazard = d.hazard(x_star)

        def penalty_for(w: float) -> float:
            return (p.r - w) / hazard
    else:
        def penalty_for(w: float) -> float:
            return p.r - w

    def surplus(w: float) -> float:
        terms = (LumpSumPenaltyTerms(w=w, rho=penalty_for(w)) if kind == "lump_sum"
                 else UnitPenaltyTerms(w=w, rho1=penalty_for(w)))
        return contract_profits(p, d, terms, x_star)[0] - p.reservation

    # abs_tol bounds both the surplus residual and the width of the price bracket
    cfg = SolveConfig.for_bracket(p.c + p.k, p.r, abs_tol=1e-12 * p.r, rel_tol=1e-16)
    try:
        w_hat = bisect_root(surplus, cfg)
    except NoSignChange as exc:
        raise BracketFailure(f"supplier surplus has no sign change on [{p.c + p.k:.6g}, {p.r:.6g}]") from exc
    LOGGER.debug("numeric %s coordination: w=%.12g", kind, w_hat)
    return _solution(p, d, kind, w_hat, penalty_for(w_hat), x_star, notes)


def min_wholesale_for_reservation(p: MarketParams, d: Optional[DemandModel] = None) -> float:
    """
    Smallest wholesale price at which the supplier's best response earns Z.

    Evaluated as k - (c/(b lambda + 1)) W_{-1}(-(b lambda + 1) e^{-(b lambda + 1 + Z lambda / c)})
    in log form, so large Z does not underflow. Z = 0 gives k + c.

    Raises:
        DomainError: If the W argument falls below -1/e
    """
    d = d or exponential_demand(p)
    if not d.is_exponential:
        raise ClosedFormUnavailable("participation threshold closed form needs an exponential tail")
    m = d.base * d.rate + 1.0
    t = m + p.reservation * d.rate / p.c - math.log(m)
    return p.k - (p.c / m) * lambert_wm1_of_negexp(t)


def small_margin_comparison(p: MarketParams, d: Optional[DemandModel] = None) -> SmallMarginComparison:
    """Coordinating renewal price and penalty sizes side by side for one market."""
    from ..multi_gen.renewal import coordinating_wholesale

    d = d or exponential_demand(p)
    w_delta = coordinating_wholesale(p, d)
    lump = coordinated_lump_sum(p, d)
    unit = coordinated_unit_penalty(p, d)
    return SmallMarginComparison(
        margin_ratio=p.margin_ratio,
        coordinating_price=w_delta,
        coordinating_price_ratio=w_delta / p.r,
        lump_sum_penalty=lump.penalty,
        unit_penalty=unit.penalty,
    )
