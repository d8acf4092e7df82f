"""
Pydantic models for multi-generation (renewal) analyses.
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class WholesaleComparison(BaseModel):
    """
    OEM-optimal versus coordinating wholesale price under endogenous renewal.

    Profits are the OEM's expected profit per generation.
    """
    model_config = ConfigDict(frozen=True)

    w_opt: float
    w_coord: float
    oem_profit_opt: float
    oem_profit_coord: float
    profit_difference_pct: float = Field(..., description="100 (opt - coord) / opt")
    duration_opt: float = Field(..., description="Expected generations with the incumbent at w_opt")
    duration_coord: float = Field(..., description="Expected generations at w^delta")
    grid_guard_agrees: bool = True


class RenewalAnalysis(BaseModel):
    """
    Capacity, renewal odds and NPVs of a multi-generation wholesale relationship.

    Attributes:
        mode: Renewal rule the supplier faces
        wholesale_price: Price per unit paid in every generation
        capacity: Supplier capacity per generation
        renewal_prob: R(x) = P(D <= x) (endogenous) or the fixed probability (exogenous)
        expected_generations: 1 / (1 - R), mean relationship length
        supplier_npv: Supplier's NPV over the relationship
        oem_npv: OEM's NPV over all generations (successor suppliers included)
        chain_npv_first_best: Pi* / (1 - delta)
        oem_fraction: oem_npv / chain_npv_first_best
    """
    model_config = ConfigDict(frozen=True)

    mode: Literal["exogenous", "endogenous"]
    wholesale_price: float
    capacity: float
    renewal_prob: float = Field(..., ge=0, lt=1)
    expected_generations: float = Field(..., ge=1)
    supplier_npv: float
    oem_npv: float
    chain_npv_first_best: float
    oem_fraction: float
    comparison: Optional[WholesaleComparison] = None
    notes: List[str] = Field(default_factory=list)
