"""
Pydantic models for the univariate solvers.
"""

from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SolveConfig(BaseModel):
    """
    Tolerances and bracket for one solve.

    Attributes:
        abs_tol: Absolute tolerance on bracket width (and on |g| for bisection)
        rel_tol: Relative tolerance on bracket width, scaled by max(|lo|, |hi|)
        max_iter: Iteration cap
        bracket: (lo, hi) search interval
    """
    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(1e-10, gt=0, description="Absolute tolerance")
    rel_tol: float = Field(1e-12, gt=0, description="Relative tolerance")
    max_iter: int = Field(200, ge=1, description="Iteration cap")
    bracket: Tuple[float, float] = Field(..., description="Search interval (lo, hi)")

    @model_validator(mode='after')
    def _check_bracket(self) -> 'SolveConfig':
        lo, hi = self.bracket
        if not lo < hi:
            raise ValueError(f"bracket must satisfy lo < hi, got {self.bracket}")
        return self

    @property
    def width_tol(self) -> float:
        lo, hi = self.bracket
        return max(self.abs_tol, self.rel_tol * max(abs(lo), abs(hi)))

    @classmethod
    def for_bracket(cls, lo: float, hi: float, abs_tol: float = 1e-10, rel_tol: float = 1e-12,
                    max_iter: int = 200) -> 'SolveConfig':
        return cls(abs_tol=abs_tol, rel_tol=rel_tol, max_iter=max_iter, bracket=(lo, hi))


class SolveResult(BaseModel):
    """Outcome of a solve: location, objective value there, iterations used."""
    model_config = ConfigDict(frozen=True)

    x: float
    value: float
    iterations: int
