"""
Pydantic models for scenarios, factorial grids and their results.
"""

import itertools
from typing import Annotated, Dict, Iterator, List, Literal, Optional, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..core.models import DemandModel, LumpSumPenaltyTerms, MarketParams, RenewalTerms, UnitPenaltyTerms, WholesaleTerms
from ..errors import GridTooLarge
from ..simulation.models import SimConfig

ContractFamily = Literal["wholesale", "lump_sum", "unit_penalty", "renewal"]


class Directive(BaseModel):
    """Ask the engine to derive the contract: coordinate the chain or optimise the OEM's profit."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["coordinate", "optimize"]
    target: ContractFamily = "renewal"


ScenarioContract = Annotated[
    Union[WholesaleTerms, LumpSumPenaltyTerms, UnitPenaltyTerms, RenewalTerms, Directive],
    Field(discriminator="kind"),
]


class Scenario(BaseModel):
    """One market, its demand model, a contract or directive, and optional simulation settings."""
    model_config = ConfigDict(frozen=True)

    market: MarketParams
    demand: DemandModel
    contract: ScenarioContract
    sim: Optional[SimConfig] = None


# Axes a factorial grid may vary; r_minus_k sets r = k + value, n selects an Erlang tail
GRID_AXES = ("r", "c", "k", "b", "lambda", "delta", "reservation", "r_minus_k", "n")

FACTORIAL_METRICS = (
    "w_opt",
    "w_coord",
    "oem_profit_opt",
    "oem_profit_coord",
    "profit_difference_pct",
    "duration_opt",
    "duration_coord",
)


class ExperimentGrid(BaseModel):
    """
    Full-factorial design over market parameters.

    Attributes:
        axes: Parameter name -> values, expanded as a Cartesian product in insertion order
        fixed: Parameter values shared by every cell
        metrics: Result columns to keep
        cap: Largest allowed number of cells
    """
    model_config = ConfigDict(frozen=True)

    axes: Dict[str, List[float]]
    fixed: Dict[str, float] = Field(default_factory=lambda: {"c": 1.0, "k": 0.0})
    metrics: List[str] = Field(default_factory=lambda: list(FACTORIAL_METRICS))
    cap: int = Field(100_000, ge=1)

    @field_validator("axes", "fixed")
    @classmethod
    def _known_axes(cls, value: Dict) -> Dict:
        unknown = sorted(set(value) - set(GRID_AXES))
        if unknown:
            raise ValueError(f"unknown grid parameters: {', '.join(unknown)}")
        return value

    @field_validator("metrics")
    @classmethod
    def _known_metrics(cls, value: List[str]) -> List[str]:
        unknown = [m for m in value if m not in FACTORIAL_METRICS]
        if unknown:
            raise ValueError(f"unknown metrics: {', '.join(unknown)}")
        return value

    @property
    def size(self) -> int:
        size = 1
        for values in self.axes.values():
            size *= len(values)
        return size

    def check_size(self) -> None:
        if self.size > self.cap:
            raise GridTooLarge(f"grid has {self.size} cells, cap is {self.cap}")

    def cells(self) -> Iterator[Dict[str, float]]:
        """Cell parameter dicts in row-major order of the axes."""
        self.check_size()
        names = list(self.axes)
        for combo in itertools.product(*(self.axes[n] for n in names)):
            cell = dict(self.fixed)
            cell.update(zip(names, combo))
            yield cell

    @classmethod
    def renewal_price_design(cls) -> 'ExperimentGrid':
        """The 54-cell design comparing optimal and coordinating renewal prices."""
        return cls(axes={
            "r_minus_k": [5.0, 10.0, 20.0],
            "b": [0.0, 1.0],
            "lambda": [0.1, 0.5, 1.0],
            "delta": [0.85, 0.9, 0.95],
        })


class FactorialResult(BaseModel):
    """Per-cell rows, the per-axis summary, and the number of failed cells."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rows: pd.DataFrame
    summary: pd.DataFrame
    failed: int = 0

    @property
    def partial(self) -> bool:
        return self.failed > 0
