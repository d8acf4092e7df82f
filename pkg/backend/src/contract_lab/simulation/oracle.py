"""
Monte-Carlo oracle for expected profits and relationship NPVs.

Replications are split into fixed-size blocks, each with its own SeedSequence child.
Blocks may run on worker threads but are always concatenated in block order, so results
are bit-identical for any thread count.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple, TypeVar, Union

import numpy as np

from .. import get_settings
from ..core.models import ContractTerms, DemandModel, LumpSumPenaltyTerms, MarketParams, UnitPenaltyTerms
from ..errors import InvalidParameters
from .models import SimConfig, SimEstimate

LOGGER = logging.getLogger(__name__)

T = TypeVar("T")


def sample_demand(d: DemandModel, rng: np.random.Generator,
                  size: Optional[int] = None) -> Union[float, np.ndarray]:
    """One demand draw, or an array of `size` draws."""
    if size is None:
        return float(d.sample(rng, 1)[0])
    return d.sample(rng, size)


def _worker_count(cfg: SimConfig, blocks: int) -> int:
    threads = cfg.threads if cfg.threads is not None else get_settings().threads
    if threads == 0:
        threads = os.cpu_count() or 1
    return max(1, min(threads, blocks))


def _run_blocks(cfg: SimConfig, block: Callable[[np.random.Generator, int], T]) -> List[T]:
    n_blocks = -(-cfg.replications // cfg.block_size)
    children = np.random.SeedSequence(cfg.seed).spawn(n_blocks)
    sizes = [cfg.block_size] * (n_blocks - 1) + [cfg.replications - cfg.block_size * (n_blocks - 1)]

    def run(i: int) -> T:
        return block(np.random.default_rng(children[i]), sizes[i])

    workers = _worker_count(cfg, n_blocks)
    LOGGER.debug("simulating %d replications in %d blocks on %d threads", cfg.replications, n_blocks, workers)
    if workers == 1:
        return [run(i) for i in range(n_blocks)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, range(n_blocks)))


def estimate_single_gen_profit(p: MarketParams, d: DemandModel, terms: ContractTerms, x: float,
                               cfg: SimConfig) -> Tuple[SimEstimate, SimEstimate]:
    """
    Realised (supplier, OEM) profit of one generation at capacity x, averaged over replications.

    The lump-sum penalty is due when D > x strictly; the per-unit penalty on every unit short.
    Renewal contracts are paid like wholesale contracts within the generation.
    """
    if x < 0:
        raise InvalidParameters("capacity_nonnegative", f"x={x!r}")

    def block(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
        demand = d.sample(rng, size)
        sales = np.minimum(demand, x)
        supplier = -p.c * x + (terms.w - p.k) * sales
        oem = (p.r - terms.w) * sales
        if isinstance(terms, LumpSumPenaltyTerms):
            transfer = terms.rho * (demand > x)
        elif isinstance(terms, UnitPenaltyTerms):
            transfer = terms.rho1 * np.maximum(demand - x, 0.0)
        else:
            transfer = np.zeros(size)
        return supplier - transfer, oem + transfer

    results = _run_blocks(cfg, block)
    supplier = np.concatenate([s for s, _ in results])
    oem = np.concatenate([o for _, o in results])
    return SimEstimate.from_samples(supplier), SimEstimate.from_samples(oem)


def estimate_relationship_npv(p: MarketParams, d: DemandModel, w: float, cfg: SimConfig,
                              x: Optional[float] = None) -> Tuple[SimEstimate, SimEstimate]:
    """
    Simulate relationships that end after the first generation with D > x.

    Each generation's realised supplier profit is discounted by delta^t. Capacity defaults
    to the supplier's endogenous-renewal best response to w.

    Returns:
        (discounted supplier NPV, relationship length in generations)
    """
    delta = cfg.discount if cfg.discount is not None else p.delta
    if delta is None:
        raise InvalidParameters("discount_in_unit_interval", "delta is required for relationship simulation")
    if x is None:
        from ..multi_gen.renewal import supplier_best_response_endogenous
        x = supplier_best_response_endogenous(p, d, w)
    horizon = cfg.horizon(delta)

    def block(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
        npv = np.zeros(size)
        generations = np.zeros(size)
        active = np.arange(size)
        weight = 1.0
        for _ in range(horizon):
            if active.size == 0:
                break
            demand = d.sample(rng, active.size)
            npv[active] += weight * (-p.c * x + (w - p.k) * np.minimum(demand, x))
            generations[active] += 1.0
            # D == x counts as fulfilled
            active = active[demand <= x]
            weight *= delta
        return npv, generations

    results = _run_blocks(cfg, block)
    npv = np.concatenate([v for v, _ in results])
    generations = np.concatenate([g for _, g in results])
    return SimEstimate.from_samples(npv), SimEstimate.from_samples(generations)
