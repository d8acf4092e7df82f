"""
Centralized benchmark and the wholesale-price Stackelberg game for one product generation.

Closed forms cover the exponential tail; Erlang tails go through golden-section on the
same expected-profit functions.
"""

import logging
import math
from typing import Tuple

from ..core.models import (
    ContractTerms,
    DemandModel,
    EndogenousRenewal,
    LumpSumPenaltyTerms,
    MarketParams,
    OutcomeReport,
    RenewalTerms,
    UnitPenaltyTerms,
    WholesaleTerms,
)
from ..core.validation import assumption_notes, require_valid
from ..errors import NoSignChange, ReservationTooHigh
from ..numerics import SolveConfig, bisect_root, golden_section_max, maximize_capacity

LOGGER = logging.getLogger(__name__)


def _best_capacity(d: DemandModel, unit_margin: float, c: float) -> float:
    """Argmax of -c x + unit_margin * E[min(D, x)]."""
    lo, hi = d.capacity_bracket()
    result = maximize_capacity(
        lambda x: -c * x + unit_margin * d.expected_sales(x),
        lambda x: -c + unit_margin * d.survival(x),
        lo, hi, d.capacity_scale(),
    )
    return result.x


def centralized_optimum(p: MarketParams, d: DemandModel) -> Tuple[float, float]:
    """
    First-best capacity x* and chain profit Pi* = -c x* + (r - k) E[min(D, x*)].

    Raises:
        NoViableMargin: If r - k <= c
    """
    require_valid(p)
    margin = p.r - p.k
    if d.is_exponential:
        log_ratio = math.log(margin / p.c)
        x_star = d.base + log_ratio / d.rate
        pi_star = (margin - p.c) * (d.base + 1.0 / d.rate) - (p.c / d.rate) * log_ratio
        return x_star, pi_star
    x_star = _best_capacity(d, margin, p.c)
    return x_star, -p.c * x_star + margin * d.expected_sales(x_star)


def supplier_best_response_wholesale(p: MarketParams, d: DemandModel, w: float) -> float:
    """Supplier capacity under a plain wholesale price; zero below the unit cost c + k."""
    if w < p.c + p.k:
        return 0.0
    if d.is_exponential:
        return d.base + math.log((w - p.k) / p.c) / d.rate
    return _best_capacity(d, w - p.k, p.c)


def supplier_profit(p: MarketParams, d: DemandModel, w: float, x: float) -> float:
    return -p.c * x + (w - p.k) * d.expected_sales(x)


def oem_profit(p: MarketParams, d: DemandModel, w: float, x: float) -> float:
    return (p.r - w) * d.expected_sales(x)


def contract_profits(p: MarketParams, d: DemandModel, terms: ContractTerms, x: float) -> Tuple[float, float]:
    """
    Expected (supplier, OEM) profit of one generation under any contract at capacity x.

    Penalties move money from supplier to OEM, so the sum is always the chain profit.
    Renewal contracts pay like a wholesale contract within a generation.
    """
    supplier = supplier_profit(p, d, terms.w, x)
    oem = oem_profit(p, d, terms.w, x)
    if isinstance(terms, LumpSumPenaltyTerms):
        transfer = terms.rho * d.survival(x)
    elif isinstance(terms, UnitPenaltyTerms):
        transfer = terms.rho1 * d.expected_shortfall(x)
    else:
        transfer = 0.0
    return supplier - transfer, oem + transfer


def _penalty_best_response(p: MarketParams, d: DemandModel, terms: ContractTerms) -> float:
    def expected(x: float) -> float:
        return contract_profits(p, d, terms, x)[0]

    if isinstance(terms, LumpSumPenaltyTerms):
        def marginal(x: float) -> float:
            return -p.c + (terms.w - p.k) * d.survival(x) + terms.rho * d.density(x)
        effective = terms.w - p.k + terms.rho * d.rate
    else:
        def marginal(x: float) -> float:
            return -p.c + (terms.w - p.k + terms.rho1) * d.survival(x)
        effective = terms.w - p.k + terms.rho1

    if d.is_exponential:
        interior = d.base + math.log(effective / p.c) / d.rate if effective > p.c else d.base
    else:
        lo, hi = d.capacity_bracket()
        interior = maximize_capacity(expected, marginal, lo, hi, d.capacity_scale()).x
    # Below b the profit is linear in x, so the only other candidate is x = 0
    return interior if expected(interior) >= expected(0.0) else 0.0


def supplier_best_response(p: MarketParams, d: DemandModel, terms: ContractTerms) -> float:
    """Supplier capacity for any contract family."""
    if isinstance(terms, WholesaleTerms):
        return supplier_best_response_wholesale(p, d, terms.w)
    if isinstance(terms, RenewalTerms):
        if isinstance(terms.mode, EndogenousRenewal):
            from ..multi_gen.renewal import supplier_best_response_endogenous
            return supplier_best_response_endogenous(p, d, terms.w)
        return supplier_best_response_wholesale(p, d, terms.w)
    return _penalty_best_response(p, d, terms)


def supplier_wholesale_value(p: MarketParams, d: DemandModel, w: float) -> float:
    """Supplier profit at its own best response to w."""
    return supplier_profit(p, d, w, supplier_best_response_wholesale(p, d, w))


def _oem_value(p: MarketParams, d: DemandModel, w: float) -> float:
    return oem_profit(p, d, w, supplier_best_response_wholesale(p, d, w))


def _reservation_price(p: MarketParams, d: DemandModel) -> float:
    """Lowest w whose best response earns the supplier its reservation profit."""
    if d.is_exponential:
        from .penalty import min_wholesale_for_reservation
        return min_wholesale_for_reservation(p, d)
    lo, hi = p.c + p.k, p.r
    cfg = SolveConfig.for_bracket(lo, hi, abs_tol=1e-12 * max(p.r, p.reservation), rel_tol=1e-15)
    try:
        return bisect_root(lambda w: supplier_wholesale_value(p, d, w) - p.reservation, cfg)
    except NoSignChange as exc:
        raise ReservationTooHigh(f"no wholesale price up to r pays Z={p.reservation:.6g}") from exc


def oem_optimal_wholesale(p: MarketParams, d: DemandModel) -> Tuple[float, OutcomeReport]:
    """
    OEM's optimal wholesale price and the resulting single-generation outcome.

    The closed form k + sqrt((r-k)c/(b lambda + 1)) needs an exponential tail and
    r - k > (b lambda + 1) c; otherwise golden-section on the OEM profit is used and the
    fallback is recorded in the report notes. A positive reservation profit raises the price
    to the supplier's participation threshold when needed.
    """
    validation = require_valid(p)
    notes = assumption_notes(validation)
    x_star, pi_star = centralized_optimum(p, d)

    m = d.base * d.rate + 1.0
    if d.is_exponential and p.r - p.k > m * p.c:
        w_tilde = p.k + math.sqrt((p.r - p.k) * p.c / m)
    else:
        reason = "erlang tail" if not d.is_exponential else "r-k <= (b*lambda+1)c"
        LOGGER.warning("wholesale closed form unavailable (%s); using golden-section", reason)
        notes.append(f"closed form unavailable ({reason}): golden-section on OEM profit")
        cfg = SolveConfig.for_bracket(p.c + p.k, p.r, abs_tol=1e-10 * (p.r - p.k))
        w_tilde = golden_section_max(lambda w: _oem_value(p, d, w), cfg).x

    if p.reservation > 0 and supplier_wholesale_value(p, d, w_tilde) < p.reservation:
        w_min = _reservation_price(p, d)
        if w_min > p.r:
            raise ReservationTooHigh(f"participation price {w_min:.6g} exceeds r={p.r:.6g}")
        notes.append(f"reservation profit binds: price raised to w_min={w_min:.12g}")
        w_tilde = max(w_tilde, w_min)

    x = supplier_best_response_wholesale(p, d, w_tilde)
    pi_s = supplier_profit(p, d, w_tilde, x)
    pi_m = oem_profit(p, d, w_tilde, x)
    report = OutcomeReport(
        contract="wholesale",
        wholesale_price=w_tilde,
        capacity=x,
        supplier_profit=pi_s,
        oem_profit=pi_m,
        chain_profit=pi_s + pi_m,
        first_best_capacity=x_star,
        first_best_profit=pi_star,
        efficiency=(pi_s + pi_m) / pi_star,
        notes=notes,
    )
    return w_tilde, report
