"""
Multi-generation analysis: NPVs under exogenous and endogenous contract renewal.
"""

from .models import RenewalAnalysis, WholesaleComparison
from .renewal import (
    asymptotic_oem_fraction,
    centralized_npv,
    coordinated_renewal_report,
    coordinating_wholesale,
    npv_exogenous,
    optimal_wholesale_endogenous,
    relationship_npv,
    renewal_analysis,
    supplier_best_response_endogenous,
)

__all__ = [
    'RenewalAnalysis', 'WholesaleComparison',
    'asymptotic_oem_fraction', 'centralized_npv', 'coordinated_renewal_report', 'coordinating_wholesale',
    'npv_exogenous', 'optimal_wholesale_endogenous', 'relationship_npv', 'renewal_analysis',
    'supplier_best_response_endogenous',
]
