"""
Pydantic models for the Monte-Carlo oracle.
"""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .. import get_settings

# discount mass beyond the horizon is below this fraction
TRUNCATION_MASS = 1e-12


class SimConfig(BaseModel):
    """
    Monte-Carlo settings.

    Attributes:
        seed: Root seed; replication blocks draw from SeedSequence(seed).spawn(...)
        replications: Number of simulated generations (single-gen) or relationships
        discount: delta for relationship runs; falls back to the market's delta
        horizon_cap: Generations simulated per relationship; derived from delta when unset
        block_size: Replications per substream
        threads: Worker cap; None uses CONTRACTLAB_THREADS
    """
    model_config = ConfigDict(frozen=True)

    seed: int = Field(default_factory=lambda: get_settings().seed, ge=0, lt=2 ** 64)
    replications: int = Field(100_000, ge=1)
    discount: Optional[float] = Field(None, gt=0, lt=1)
    horizon_cap: Optional[int] = Field(None, ge=1)
    block_size: int = Field(10_000, ge=1)
    threads: Optional[int] = Field(None, ge=0)

    def horizon(self, delta: float) -> int:
        """horizon_cap, or the smallest H with delta^H < TRUNCATION_MASS."""
        if self.horizon_cap is not None:
            return self.horizon_cap
        return int(math.ceil(math.log(TRUNCATION_MASS) / math.log(delta)))


class SimEstimate(BaseModel):
    """Sample mean with its standard error."""
    model_config = ConfigDict(frozen=True)

    mean: float
    std_error: float = Field(..., ge=0)
    replications: int = Field(..., ge=1)

    @classmethod
    def from_samples(cls, values: np.ndarray) -> 'SimEstimate':
        n = int(values.size)
        std_error = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        return cls(mean=float(values.mean()), std_error=std_error, replications=n)

    def within(self, expected: float, sigmas: float = 3.0) -> bool:
        """True when expected lies within `sigmas` standard errors of the mean."""
        return abs(self.mean - expected) <= sigmas * self.std_error + 1e-12 * max(1.0, abs(expected))
