"""
Single-generation analysis: first best, wholesale game, penalty contracts.
"""

from .models import Enforceability, PenaltyContractSolution, SmallMarginComparison
from .penalty import (
    coordinated_lump_sum,
    coordinated_penalty_numeric,
    coordinated_unit_penalty,
    min_wholesale_for_reservation,
    small_margin_comparison,
)
from .wholesale import (
    centralized_optimum,
    contract_profits,
    oem_optimal_wholesale,
    oem_profit,
    supplier_best_response,
    supplier_best_response_wholesale,
    supplier_profit,
    supplier_wholesale_value,
)

__all__ = [
    'Enforceability', 'PenaltyContractSolution', 'SmallMarginComparison',
    'coordinated_lump_sum', 'coordinated_penalty_numeric', 'coordinated_unit_penalty',
    'min_wholesale_for_reservation', 'small_margin_comparison',
    'centralized_optimum', 'contract_profits', 'oem_optimal_wholesale', 'oem_profit',
    'supplier_best_response', 'supplier_best_response_wholesale', 'supplier_profit',
    'supplier_wholesale_value',
]
