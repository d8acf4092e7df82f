"""
Evaluate a scenario into an OutcomeReport and render reports as aligned text.
"""

import logging
from typing import Callable, List, Optional, Tuple

from ..core.models import (
    DemandModel,
    ExogenousRenewal,
    LumpSumPenaltyTerms,
    MarketParams,
    OutcomeReport,
    RenewalTerms,
    UnitPenaltyTerms,
    ValidationResult,
    WholesaleTerms,
)
from ..core.validation import assumption_notes, require_valid, validate_params
from ..errors import InvalidParameters
from ..multi_gen import (
    RenewalAnalysis,
    coordinated_renewal_report,
    npv_exogenous,
    optimal_wholesale_endogenous,
    renewal_analysis,
)
from ..simulation import SimConfig, estimate_relationship_npv, estimate_single_gen_profit
from ..single_gen import (
    PenaltyContractSolution,
    centralized_optimum,
    contract_profits,
    coordinated_lump_sum,
    coordinated_penalty_numeric,
    coordinated_unit_penalty,
    oem_optimal_wholesale,
    supplier_best_response,
)
from .models import Directive, Scenario
from .results import ResultsWriter
from .scenario import load_scenario

LOGGER = logging.getLogger(__name__)


def _base_report(p: MarketParams, d: DemandModel, contract: str, w: float, x: float, pi_s: float, pi_m: float,
                 penalty: Optional[float] = None, notes: Optional[List[str]] = None, **extra) -> OutcomeReport:
    x_star, pi_star = centralized_optimum(p, d)
    return OutcomeReport(
        contract=contract,
        wholesale_price=w,
        penalty=penalty,
        capacity=x,
        supplier_profit=pi_s,
        oem_profit=pi_m,
        chain_profit=pi_s + pi_m,
        first_best_capacity=x_star,
        first_best_profit=pi_star,
        efficiency=(pi_s + pi_m) / pi_star,
        notes=notes or [],
        **extra,
    )


def report_from_penalty(p: MarketParams, d: DemandModel, solution: PenaltyContractSolution) -> OutcomeReport:
    return _base_report(
        p, d, solution.kind, solution.w_hat, solution.capacity, solution.supplier_profit, solution.oem_profit,
        penalty=solution.penalty, notes=list(solution.notes),
        diagnostics=solution.enforceability.model_dump(),
    )


def report_from_renewal(p: MarketParams, d: DemandModel, analysis: RenewalAnalysis) -> OutcomeReport:
    terms = WholesaleTerms(w=analysis.wholesale_price)
    pi_s, pi_m = contract_profits(p, d, terms, analysis.capacity)
    diagnostics = {"renewal_prob": analysis.renewal_prob}
    if analysis.comparison is not None:
        diagnostics.update(analysis.comparison.model_dump(exclude={"grid_guard_agrees"}))
    return _base_report(
        p, d, f"renewal_{analysis.mode}", analysis.wholesale_price, analysis.capacity, pi_s, pi_m,
        notes=list(analysis.notes),
        supplier_npv=analysis.supplier_npv,
        oem_npv=analysis.oem_npv,
        chain_npv=analysis.chain_npv_first_best,
        oem_fraction=analysis.oem_fraction,
        expected_duration=analysis.expected_generations,
        diagnostics=diagnostics,
    )


def _coordinated_penalty(p: MarketParams, d: DemandModel, kind: str) -> PenaltyContractSolution:
    if not d.is_exponential:
        return coordinated_penalty_numeric(p, d, kind)
    return coordinated_lump_sum(p, d) if kind == "lump_sum" else coordinated_unit_penalty(p, d)


def _run_directive(p: MarketParams, d: DemandModel, directive: Directive) -> OutcomeReport:
    target = directive.target
    if target in ("lump_sum", "unit_penalty"):
        # the OEM-optimal penalty contract is the coordinating one
        return report_from_penalty(p, d, _coordinated_penalty(p, d, target))
    if target == "renewal":
        if directive.kind == "coordinate":
            return report_from_renewal(p, d, coordinated_renewal_report(p, d))
        _, analysis = optimal_wholesale_endogenous(p, d)
        return report_from_renewal(p, d, analysis)
    if directive.kind == "optimize":
        return oem_optimal_wholesale(p, d)[1]
    # a plain wholesale contract coordinates only at w = r
    notes = assumption_notes(require_valid(p))
    x = supplier_best_response(p, d, WholesaleTerms(w=p.r))
    pi_s, pi_m = contract_profits(p, d, WholesaleTerms(w=p.r), x)
    return _base_report(p, d, "wholesale", p.r, x, pi_s, pi_m, notes=notes)


def evaluate_contract(p: MarketParams, d: DemandModel, contract) -> OutcomeReport:
    """OutcomeReport for explicit contract terms or a coordinate/optimize directive."""
    if isinstance(contract, Directive):
        return _run_directive(p, d, contract)
    if isinstance(contract, RenewalTerms):
        if isinstance(contract.mode, ExogenousRenewal):
            return report_from_renewal(p, d, npv_exogenous(p, d, contract.w, contract.mode.prob))
        return report_from_renewal(p, d, renewal_analysis(p, d, contract.w))
    notes = assumption_notes(require_valid(p))
    x = supplier_best_response(p, d, contract)
    pi_s, pi_m = contract_profits(p, d, contract, x)
    penalty = None
    if isinstance(contract, LumpSumPenaltyTerms):
        penalty = contract.rho
    elif isinstance(contract, UnitPenaltyTerms):
        penalty = contract.rho1
    return _base_report(p, d, contract.kind, contract.w, x, pi_s, pi_m, penalty=penalty, notes=notes)


def _terms_of(report: OutcomeReport):
    if report.contract == "lump_sum":
        return LumpSumPenaltyTerms(w=report.wholesale_price, rho=report.penalty or 0.0)
    if report.contract == "unit_penalty":
        return UnitPenaltyTerms(w=report.wholesale_price, rho1=report.penalty or 0.0)
    return WholesaleTerms(w=report.wholesale_price)


def attach_simulation(p: MarketParams, d: DemandModel, report: OutcomeReport, cfg: SimConfig) -> OutcomeReport:
    """Add Monte-Carlo estimates of the report's expected profits (and NPV for renewal runs)."""
    supplier, oem = estimate_single_gen_profit(p, d, _terms_of(report), report.capacity, cfg)
    diagnostics = dict(report.diagnostics)
    diagnostics.update({
        "sim_supplier_profit": supplier.mean,
        "sim_supplier_profit_se": supplier.std_error,
        "sim_oem_profit": oem.mean,
        "sim_oem_profit_se": oem.std_error,
    })
    if report.contract == "renewal_endogenous":
        npv, duration = estimate_relationship_npv(p, d, report.wholesale_price, cfg, x=report.capacity)
        diagnostics.update({
            "sim_supplier_npv": npv.mean,
            "sim_supplier_npv_se": npv.std_error,
            "sim_duration": duration.mean,
            "sim_duration_se": duration.std_error,
        })
    return report.model_copy(update={"diagnostics": diagnostics})


def evaluate_scenario(scenario: Scenario) -> OutcomeReport:
    report = evaluate_contract(scenario.market, scenario.demand, scenario.contract)
    if scenario.sim is not None:
        report = attach_simulation(scenario.market, scenario.demand, report, scenario.sim)
    return report


REPORT_FIELDS: Tuple[Tuple[str, str], ...] = (
    ("wholesale_price", "wholesale price"),
    ("penalty", "penalty"),
    ("capacity", "capacity"),
    ("supplier_profit", "supplier profit"),
    ("oem_profit", "OEM profit"),
    ("chain_profit", "chain profit"),
    ("first_best_capacity", "first-best capacity"),
    ("first_best_profit", "first-best profit"),
    ("efficiency", "efficiency"),
    ("supplier_npv", "supplier NPV"),
    ("oem_npv", "OEM NPV"),
    ("chain_npv", "first-best chain NPV"),
    ("oem_fraction", "OEM fraction"),
    ("expected_duration", "expected duration"),
)


def render_report(report: OutcomeReport) -> str:
    """Aligned `label  value` lines; absent optional fields are skipped."""
    rows = [("contract", report.contract)]
    for field, label in REPORT_FIELDS:
        value = getattr(report, field)
        if value is not None:
            rows.append((label, f"{value:.12g}"))
    rows.extend((name, f"{value:.12g}") for name, value in report.diagnostics.items())
    width = max(len(label) for label, _ in rows)
    lines = [f"{label:<{width}}  {value}" for label, value in rows]
    lines.extend(f"note: {note}" for note in report.notes)
    return "\n".join(lines) + "\n"


def check_scenario(scenario: Scenario, strict: bool = False) -> ValidationResult:
    """
    Validate a scenario's market, logging assumption warnings.

    Raises:
        InvalidParameters: On a fatal constraint, or on any warning when strict
    """
    result = validate_params(scenario.market)
    if result.status == "fatal":
        require_valid(scenario.market)
    if strict and result.warnings:
        raise InvalidParameters("strict", "; ".join(result.warnings))
    return result


def run_scenario(path, writer: Optional[ResultsWriter] = None, csv_path=None, strict: bool = False,
                 prepare: Optional[Callable[[Scenario], Scenario]] = None) -> Tuple[OutcomeReport, str]:
    """
    Load, validate and evaluate a scenario file.

    Args:
        prepare: Optional rewrite of the parsed scenario (contract or simulation overrides) before evaluation

    Returns:
        The report and its rendered text; the report is also appended to a CSV when a writer is given
    """
    scenario = load_scenario(path)
    check_scenario(scenario, strict)
    if prepare is not None:
        scenario = prepare(scenario)
    report = evaluate_scenario(scenario)
    if writer is not None:
        writer.append_report(report, csv_path, scenario=str(path))
    return report, render_report(report)
