"""
Domain types shared by every module, and parameter validation.
"""

from .models import (
    ContractTerms,
    DemandModel,
    EndogenousRenewal,
    ErlangTail,
    ExogenousRenewal,
    ExponentialTail,
    LumpSumPenaltyTerms,
    MarketParams,
    OutcomeReport,
    RenewalTerms,
    UnitPenaltyTerms,
    ValidationResult,
    WholesaleTerms,
    erlang_demand,
    exponential_demand,
)
from .validation import assumption_notes, require_valid, validate_params

__all__ = [
    'ContractTerms', 'DemandModel', 'EndogenousRenewal', 'ErlangTail', 'ExogenousRenewal',
    'ExponentialTail', 'LumpSumPenaltyTerms', 'MarketParams', 'OutcomeReport', 'RenewalTerms',
    'UnitPenaltyTerms', 'ValidationResult', 'WholesaleTerms', 'erlang_demand', 'exponential_demand',
    'assumption_notes', 'require_valid', 'validate_params',
]
