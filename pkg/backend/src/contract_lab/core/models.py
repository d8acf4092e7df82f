"""
Pydantic models shared by every analysis module: market primitives, demand,
contract terms and outcome reports.
"""

import math
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..special.gamma import reg_lower_gamma_int, reg_upper_gamma_int


class MarketParams(BaseModel):
    """
    Economic primitives of one scenario.

    Construction only checks that every value is a finite number; range checks are
    reported by validate_params so that violations surface instead of being clamped.

    Attributes:
        r: Retail price per unit
        c: Capacity cost per unit
        k: Production cost per unit
        b: Base demand (advance orders)
        lam: Rate of the exponential demand tail, E[A] = 1/lam
        delta: Discount factor per generation (multi-generation analyses only)
        reservation: Supplier reservation profit Z
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True, allow_inf_nan=False)

    r: float = Field(..., description="Retail price per unit")
    c: float = Field(..., description="Capacity cost per unit")
    k: float = Field(0.0, description="Production cost per unit")
    b: float = Field(0.0, description="Base demand")
    lam: float = Field(..., alias="lambda", description="Tail rate, E[A] = 1/lambda")
    delta: Optional[float] = Field(None, description="Discount factor in (0, 1)")
    reservation: float = Field(0.0, description="Supplier reservation profit Z")

    @property
    def margin(self) -> float:
        """Gross margin r - k."""
        return self.r - self.k

    @property
    def margin_ratio(self) -> float:
        """(r - k) / c."""
        return (self.r - self.k) / self.c

    @property
    def high_margin(self) -> bool:
        """Standing assumption r - k - c > c."""
        return self.r - self.k - self.c > self.c

    @property
    def tail_dominance(self) -> bool:
        """Standing assumption E[A] = 1/lambda >= b."""
        return 1.0 / self.lam >= self.b


class ExponentialTail(BaseModel):
    """A ~ Exp(rate)."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["exponential"] = "exponential"
    rate: float = Field(..., gt=0, allow_inf_nan=False)

    @property
    def shape(self) -> int:
        return 1


class ErlangTail(BaseModel):
    """A ~ Erlang(rate, shape): sum of `shape` independent Exp(rate) phases."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["erlang"] = "erlang"
    rate: float = Field(..., gt=0, allow_inf_nan=False)
    shape: int = Field(..., ge=1)


TailDistribution = Annotated[Union[ExponentialTail, ErlangTail], Field(discriminator="kind")]


class DemandModel(BaseModel):
    """
    Demand D = base + A with an Exponential or Erlang tail.

    Shape-1 tails (Exponential, or Erlang with shape 1) share one code path, so both
    return identical numbers for every query and every random draw.
    """
    model_config = ConfigDict(frozen=True)

    base: float = Field(..., ge=0, allow_inf_nan=False, description="Base demand b")
    tail: TailDistribution

    @property
    def rate(self) -> float:
        return self.tail.rate

    @property
    def shape(self) -> int:
        return self.tail.shape

    @property
    def is_exponential(self) -> bool:
        return self.tail.shape == 1

    @property
    def tail_mean(self) -> float:
        return self.tail.shape / self.tail.rate

    @property
    def mean(self) -> float:
        return self.base + self.tail_mean

    def capacity_bracket(self) -> Tuple[float, float]:
        """Search interval for capacities; survival is below e^-30 past the upper end."""
        return self.base, self.base + 50.0 * self.tail_mean

    def capacity_scale(self) -> float:
        return self.base + self.tail_mean

    def survival(self, x: float) -> float:
        """P(D > x); equals 1 for x <= base."""
        if x <= self.base:
            return 1.0
        t = self.rate * (x - self.base)
        if self.shape == 1:
            return math.exp(-t)
        return reg_upper_gamma_int(self.shape, t)

    def cdf(self, x: float) -> float:
        """P(D <= x)."""
        if x <= self.base:
            return 0.0
        t = self.rate * (x - self.base)
        if self.shape == 1:
            return -math.expm1(-t)
        return reg_lower_gamma_int(self.shape, t)

    def renewal_probability(self, x: float) -> float:
        """R(x) = P(D <= x): the incumbent keeps the contract when demand is covered."""
        return self.cdf(x)

    def density(self, x: float) -> float:
        """Density of D at x (zero at and below the base demand)."""
        if x <= self.base:
            return 0.0
        t = self.rate * (x - self.base)
        if self.shape == 1:
            return self.rate * math.exp(-t)
        n = self.shape
        return math.exp(math.log(self.rate) + (n - 1) * math.log(t) - t - math.lgamma(n))

    def hazard(self, x: float) -> float:
        """density / survival; constant `rate` for a shape-1 tail."""
        if self.shape == 1:
            return self.rate
        s = self.survival(x)
        return self.density(x) / s if s > 0 else math.inf

    def expected_sales(self, x: float) -> float:
        """E[min(D, x)]."""
        if x <= 0.0:
            return 0.0
        if x <= self.base:
            return x
        z = x - self.base
        t = self.rate * z
        if self.shape == 1:
            return self.base - math.expm1(-t) / self.rate
        n = self.shape
        return self.base + (n / self.rate) * reg_lower_gamma_int(n + 1, t) + z * reg_upper_gamma_int(n, t)

    def expected_shortfall(self, x: float) -> float:
        """E[(D - x)^+], units of demand left unserved."""
        if x <= self.base:
            return self.mean - max(x, 0.0)
        z = x - self.base
        t = self.rate * z
        if self.shape == 1:
            return math.exp(-t) / self.rate
        n = self.shape
        value = (n / self.rate) * reg_upper_gamma_int(n + 1, t) - z * reg_upper_gamma_int(n, t)
        return max(value, 0.0)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """
        Draw `size` demand realisations.

        Each phase is an inverse-CDF exponential -ln(U)/rate; Erlang tails sum `shape` phases.
        """
        u = rng.random((size, self.shape))
        tail = -np.log1p(-u).sum(axis=1) / self.rate
        return self.base + tail


def exponential_demand(p: MarketParams) -> DemandModel:
    """Demand b + Exp(lambda) taken from the market parameters."""
    return DemandModel(base=p.b, tail=ExponentialTail(rate=p.lam))


def erlang_demand(p: MarketParams, shape: int, rate: Optional[float] = None) -> DemandModel:
    """Demand b + Erlang(rate, shape); rate defaults to the market's lambda."""
    return DemandModel(base=p.b, tail=ErlangTail(rate=p.lam if rate is None else rate, shape=shape))


class WholesaleTerms(BaseModel):
    """OEM pays w per delivered unit."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["wholesale"] = "wholesale"
    w: float = Field(..., ge=0, allow_inf_nan=False)


class LumpSumPenaltyTerms(BaseModel):
    """Wholesale price plus a lump-sum penalty rho paid once when D > x."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["lump_sum"] = "lump_sum"
    w: float = Field(..., ge=0, allow_inf_nan=False)
    rho: float = Field(..., ge=0, allow_inf_nan=False)


class UnitPenaltyTerms(BaseModel):
    """Wholesale price plus a penalty rho1 per unit of shortfall."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["unit_penalty"] = "unit_penalty"
    w: float = Field(..., ge=0, allow_inf_nan=False)
    rho1: float = Field(..., ge=0, allow_inf_nan=False)


class ExogenousRenewal(BaseModel):
    """Contract renewed with a fixed probability R, independent of capacity."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["exogenous"] = "exogenous"
    prob: float = Field(..., ge=0, le=1, allow_inf_nan=False)


class EndogenousRenewal(BaseModel):
    """Contract renewed only when the supplier covered the generation's demand."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["endogenous"] = "endogenous"


RenewalMode = Annotated[Union[ExogenousRenewal, EndogenousRenewal], Field(discriminator="kind")]


class RenewalTerms(BaseModel):
    """Wholesale contract over multiple generations with a renewal rule."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["renewal"] = "renewal"
    w: float = Field(..., ge=0, allow_inf_nan=False)
    mode: RenewalMode = Field(default_factory=EndogenousRenewal)


ContractTerms = Annotated[
    Union[WholesaleTerms, LumpSumPenaltyTerms, UnitPenaltyTerms, RenewalTerms],
    Field(discriminator="kind"),
]


class ValidationResult(BaseModel):
    """
    Outcome of validate_params.

    Attributes:
        status: "ok", "warnings" or "fatal"
        warnings: Human-readable standing-assumption violations
        fatal: Name of the first violated hard constraint, if any
    """
    model_config = ConfigDict(frozen=True)

    status: Literal["ok", "warnings", "fatal"]
    warnings: List[str] = Field(default_factory=list)
    fatal: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status != "fatal"


class OutcomeReport(BaseModel):
    """
    Per-generation (and, for multi-generation runs, NPV) outcome of one contract.

    Multi-generation fields are None for single-generation analyses.
    """
    model_config = ConfigDict(frozen=True)

    contract: str = Field(..., description="Contract label, e.g. 'wholesale' or 'renewal'")
    wholesale_price: float
    penalty: Optional[float] = None
    capacity: float
    supplier_profit: float
    oem_profit: float
    chain_profit: float
    first_best_capacity: float
    first_best_profit: float
    efficiency: float
    supplier_npv: Optional[float] = None
    oem_npv: Optional[float] = None
    chain_npv: Optional[float] = None
    oem_fraction: Optional[float] = None
    expected_duration: Optional[float] = None
    diagnostics: Dict[str, float] = Field(default_factory=dict, description="Named extra figures, e.g. enforceability")
    notes: List[str] = Field(default_factory=list, description="Numeric fallbacks and assumption annotations")
