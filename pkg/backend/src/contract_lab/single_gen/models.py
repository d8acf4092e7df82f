"""
Pydantic models for single-generation contract solutions.
"""

from typing import List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from ..core.models import LumpSumPenaltyTerms, UnitPenaltyTerms


class Enforceability(BaseModel):
    """
    How hard a penalty is to collect, seen from the supplier's side.

    Attributes:
        best_case_profit: Supplier profit when demand uses all capacity and no penalty is due
        shortfall_probability: P(D > x)
        penalty_to_best_case_ratio: Expected payout given a shortfall, divided by best_case_profit
    """
    model_config = ConfigDict(frozen=True)

    best_case_profit: float
    shortfall_probability: float = Field(..., ge=0, le=1)
    penalty_to_best_case_ratio: float


class PenaltyContractSolution(BaseModel):
    """
    OEM-optimal coordinating contract with a shortfall penalty.

    `penalty` is a lump sum for kind "lump_sum" and a per-unit amount for "unit_penalty".
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["lump_sum", "unit_penalty"]
    w_hat: float = Field(..., description="Wholesale price per unit")
    penalty: float = Field(..., description="Lump-sum or per-unit shortfall penalty")
    capacity: float = Field(..., description="Supplier capacity under the contract")
    supplier_profit: float
    oem_profit: float
    enforceability: Enforceability
    notes: List[str] = Field(default_factory=list)

    def terms(self) -> Union[LumpSumPenaltyTerms, UnitPenaltyTerms]:
        """The contract as ContractTerms, e.g. for the simulation oracle."""
        if self.kind == "lump_sum":
            return LumpSumPenaltyTerms(w=self.w_hat, rho=self.penalty)
        return UnitPenaltyTerms(w=self.w_hat, rho1=self.penalty)


class SmallMarginComparison(BaseModel):
    """Coordinating renewal price next to the penalty contracts for one market."""
    model_config = ConfigDict(frozen=True)

    margin_ratio: float = Field(..., description="(r - k) / c")
    coordinating_price: float = Field(..., description="w^delta")
    coordinating_price_ratio: float = Field(..., description="w^delta / r")
    lump_sum_penalty: float
    unit_penalty: float
