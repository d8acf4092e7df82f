"""
Multi-generation wholesale relationships with exogenous or endogenous contract renewal.

Under endogenous renewal the incumbent keeps the contract only when its capacity covered
the generation's demand, so R(x) = P(D <= x). Denominators 1 - delta R(x) are evaluated as
(1 - delta) + delta S(x) to avoid cancellation when x is far in the tail.
"""

import logging
import math
from typing import Tuple

from ..core.models import DemandModel, MarketParams
from ..core.validation import assumption_notes, require_valid
from ..errors import BracketFailure, InvalidParameters, NoSignChange, ParticipationViolated
from ..numerics import SolveConfig, bisect_root, golden_section_max, grid_guard, maximize_capacity
from ..single_gen.wholesale import centralized_optimum, oem_profit, supplier_best_response_wholesale, supplier_profit
from ..special import lambert_w0_of_exp
from .models import RenewalAnalysis, WholesaleComparison

LOGGER = logging.getLogger(__name__)


def _non_renewal_weight(p: MarketParams, d: DemandModel, x: float) -> float:
    """1 - delta R(x)."""
    return (1.0 - p.delta) + p.delta * d.survival(x)


def relationship_npv(p: MarketParams, d: DemandModel, w: float, x: float) -> float:
    """Supplier NPV of a relationship renewed while capacity x covers demand."""
    return supplier_profit(p, d, w, x) / _non_renewal_weight(p, d, x)


def _relationship_marginal(p: MarketParams, d: DemandModel, w: float, x: float) -> float:
    # numerator of d/dx [N(x) / (1 - delta R(x))]
    n_prime = -p.c + (w - p.k) * d.survival(x)
    return n_prime * _non_renewal_weight(p, d, x) + p.delta * d.density(x) * supplier_profit(p, d, w, x)


def centralized_npv(p: MarketParams, d: DemandModel) -> Tuple[float, float]:
    """First-best capacity and chain NPV Pi* / (1 - delta)."""
    require_valid(p, need_discount=True)
    x_star, pi_star = centralized_optimum(p, d)
    return x_star, pi_star / (1.0 - p.delta)


def npv_exogenous(p: MarketParams, d: DemandModel, w: float, renewal_prob: float) -> RenewalAnalysis:
    """
    Relationship renewed with a fixed probability R regardless of capacity.

    Capacity is the single-generation best response because R does not depend on it.
    """
    notes = assumption_notes(require_valid(p, need_discount=True))
    if not 0.0 <= renewal_prob < 1.0:
        raise InvalidParameters("renewal_prob_in_unit_interval", f"R={renewal_prob!r}")
    x = supplier_best_response_wholesale(p, d, w)
    _, chain_npv = centralized_npv(p, d)
    oem_npv = oem_profit(p, d, w, x) / (1.0 - p.delta)
    return RenewalAnalysis(
        mode="exogenous",
        wholesale_price=w,
        capacity=x,
        renewal_prob=renewal_prob,
        expected_generations=1.0 / (1.0 - renewal_prob),
        supplier_npv=supplier_profit(p, d, w, x) / (1.0 - p.delta * renewal_prob),
        oem_npv=oem_npv,
        chain_npv_first_best=chain_npv,
        oem_fraction=oem_npv / chain_npv,
        notes=notes,
    )


def supplier_best_response_endogenous(p: MarketParams, d: DemandModel, w: float) -> float:
    """
    Supplier capacity when renewal requires covering demand.

    Exponential tail:
        x = b + (a/(delta c) - W0(e^y)) / lambda with
        a = w - k - delta c + delta b lambda (w - k - c) and y = ln((1-delta)/delta) + a/(delta c),
        which is b + ln((delta/(1-delta)) W0(e^y)) / lambda written without exponentials.
    Other tails maximise the relationship NPV numerically.

    Raises:
        ParticipationViolated: If w < c + k
    """
    require_valid(p, need_discount=True)
    if w < p.c + p.k:
        raise ParticipationViolated(f"w={w:.6g} below unit cost c+k={p.c + p.k:.6g}")
    delta = p.delta
    if d.is_exponential:
        lam, b = d.rate, d.base
        a = (w - p.k) - delta * p.c + delta * b * lam * (w - p.k - p.c)
        ratio = a / (delta * p.c)
        y = math.log((1.0 - delta) / delta) + ratio
        return b + (ratio - lambert_w0_of_exp(y)) / lam
    lo, hi = d.capacity_bracket()
    return maximize_capacity(
        lambda x: relationship_npv(p, d, w, x),
        lambda x: _relationship_marginal(p, d, w, x),
        lo, hi, d.capacity_scale(),
    ).x


def coordinating_wholesale(p: MarketParams, d: DemandModel) -> float:
    """
    Wholesale price w^delta at which the endogenous-renewal best response is x*.

    Exponential tail: k + [delta c (1 + b lambda + ln((r-k)/c)) + (1-delta)(r-k)] / (1 + delta b lambda).
    Other tails: bisection on the supplier's first-order condition at x* over [k + c, r].

    Raises:
        BracketFailure: If the first-order condition has no sign change on [k + c, r]
    """
    require_valid(p, need_discount=True)
    delta = p.delta
    if d.is_exponential:
        bl = d.base * d.rate
        numerator = delta * p.c * (1.0 + bl + math.log((p.r - p.k) / p.c)) + (1.0 - delta) * (p.r - p.k)
        return p.k + numerator / (1.0 + delta * bl)

    x_star, _ = centralized_optimum(p, d)
    cfg = SolveConfig.for_bracket(p.c + p.k, p.r, abs_tol=1e-14 * p.r, rel_tol=1e-15)
    try:
        w = bisect_root(lambda w: _relationship_marginal(p, d, w, x_star), cfg)
    except NoSignChange as exc:
        raise BracketFailure(f"no coordinating price on [{p.c + p.k:.6g}, {p.r:.6g}]") from exc
    LOGGER.debug("coordinating price by bisection: %.12g (x*=%.12g)", w, x_star)
    return w


def coordinated_renewal_report(p: MarketParams, d: DemandModel) -> RenewalAnalysis:
    """Outcome of the coordinating contingent-renewal contract w^delta."""
    notes = assumption_notes(require_valid(p, need_discount=True))
    w = coordinating_wholesale(p, d)
    x_star, pi_star = centralized_optimum(p, d)
    chain_npv = pi_star / (1.0 - p.delta)
    oem_npv = oem_profit(p, d, w, x_star) / (1.0 - p.delta)
    return RenewalAnalysis(
        mode="endogenous",
        wholesale_price=w,
        capacity=x_star,
        renewal_prob=d.renewal_probability(x_star),
        expected_generations=1.0 / d.survival(x_star),
        supplier_npv=relationship_npv(p, d, w, x_star),
        oem_npv=oem_npv,
        chain_npv_first_best=chain_npv,
        oem_fraction=oem_npv / chain_npv,
        notes=notes,
    )


def asymptotic_oem_fraction(p: MarketParams) -> float:
    """Limit of the OEM's NPV share as (r - k)/c grows: (delta b lambda + delta)/(delta b lambda + 1)."""
    if p.delta is None:
        raise InvalidParameters("discount_in_unit_interval", "delta is required")
    dbl = p.delta * p.b * p.lam
    return (dbl + p.delta) / (dbl + 1.0)


def optimal_wholesale_endogenous(p: MarketParams, d: DemandModel) -> Tuple[float, RenewalAnalysis]:
    """
    OEM-optimal wholesale price under endogenous renewal, compared with w^delta.

    Golden-section on the OEM's per-generation profit over [k + c, r]; a 200-point scan
    guards the unimodality the search relies on. When the two disagree the search is
    repeated around the scan's best point.
    """
    notes = assumption_notes(require_valid(p, need_discount=True))

    def oem_value(w: float) -> float:
        return oem_profit(p, d, w, supplier_best_response_endogenous(p, d, w))

    lo, hi = p.c + p.k, p.r
    golden = golden_section_max(oem_value, SolveConfig.for_bracket(lo, hi, abs_tol=1e-10 * (p.r - p.k)))
    guard_w, step = grid_guard(oem_value, lo, hi)
    agrees = abs(guard_w - golden.x) <= step
    if not agrees:
        LOGGER.warning("golden-section (%.6g) and grid scan (%.6g) disagree; refining near the scan", golden.x, guard_w)
        notes.append("grid guard disagreed with golden-section; refined around the grid maximum")
        cfg = SolveConfig.for_bracket(max(lo, guard_w - step), min(hi, guard_w + step), abs_tol=1e-10 * (p.r - p.k))
        golden = golden_section_max(oem_value, cfg)
    w_opt = golden.x
    x_opt = supplier_best_response_endogenous(p, d, w_opt)

    w_coord = coordinating_wholesale(p, d)
    x_star, pi_star = centralized_optimum(p, d)
    profit_opt = oem_profit(p, d, w_opt, x_opt)
    profit_coord = oem_profit(p, d, w_coord, x_star)
    comparison = WholesaleComparison(
        w_opt=w_opt,
        w_coord=w_coord,
        oem_profit_opt=profit_opt,
        oem_profit_coord=profit_coord,
        profit_difference_pct=100.0 * (profit_opt - profit_coord) / profit_opt,
        duration_opt=1.0 / d.survival(x_opt),
        duration_coord=1.0 / d.survival(x_star),
        grid_guard_agrees=agrees,
    )
    chain_npv = pi_star / (1.0 - p.delta)
    oem_npv = profit_opt / (1.0 - p.delta)
    analysis = RenewalAnalysis(
        mode="endogenous",
        wholesale_price=w_opt,
        capacity=x_opt,
        renewal_prob=d.renewal_probability(x_opt),
        expected_generations=comparison.duration_opt,
        supplier_npv=relationship_npv(p, d, w_opt, x_opt),
        oem_npv=oem_npv,
        chain_npv_first_best=chain_npv,
        oem_fraction=oem_npv / chain_npv,
        comparison=comparison,
        notes=notes,
    )
    return w_opt, analysis


def renewal_analysis(p: MarketParams, d: DemandModel, w: float) -> RenewalAnalysis:
    """Endogenous-renewal outcome at an arbitrary wholesale price w."""
    notes = assumption_notes(require_valid(p, need_discount=True))
    x = supplier_best_response_endogenous(p, d, w)
    _, chain_npv = centralized_npv(p, d)
    oem_npv = oem_profit(p, d, w, x) / (1.0 - p.delta)
    return RenewalAnalysis(
        mode="endogenous",
        wholesale_price=w,
        capacity=x,
        renewal_prob=d.renewal_probability(x),
        expected_generations=1.0 / d.survival(x),
        supplier_npv=relationship_npv(p, d, w, x),
        oem_npv=oem_npv,
        chain_npv_first_best=chain_npv,
        oem_fraction=oem_npv / chain_npv,
        notes=notes,
    )
