"""
Full-factorial comparison of the OEM-optimal and coordinating prices under endogenous renewal.
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import ValidationError

from .. import get_settings
from ..core.models import MarketParams, erlang_demand, exponential_demand
from ..errors import ContractLabError
from ..multi_gen import optimal_wholesale_endogenous
from .models import FACTORIAL_METRICS, ExperimentGrid, FactorialResult

LOGGER = logging.getLogger(__name__)


def market_from_cell(cell: Dict[str, float]) -> MarketParams:
    k = cell.get("k", 0.0)
    r = k + cell["r_minus_k"] if "r_minus_k" in cell else cell["r"]
    return MarketParams(
        r=r,
        c=cell.get("c", 1.0),
        k=k,
        b=cell.get("b", 0.0),
        lam=cell["lambda"],
        delta=cell.get("delta"),
        reservation=cell.get("reservation", 0.0),
    )


def evaluate_cell(index: int, cell: Dict[str, float]) -> Dict:
    """One factorial row; solver and validation failures land in the `error` column."""
    row: Dict = {"cell": index, **cell}
    try:
        p = market_from_cell(cell)
        n = int(cell.get("n", 1))
        d = exponential_demand(p) if n == 1 else erlang_demand(p, n)
        _, analysis = optimal_wholesale_endogenous(p, d)
        row.update(analysis.comparison.model_dump(include=set(FACTORIAL_METRICS)))
        row["error"] = ""
    except (ContractLabError, ValidationError, KeyError) as exc:
        LOGGER.warning("cell %d failed: %s", index, exc)
        row.update({m: math.nan for m in FACTORIAL_METRICS})
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _workers(threads: Optional[int], cells: int) -> int:
    if threads is None:
        threads = get_settings().threads
    if threads == 0:
        threads = os.cpu_count() or 1
    return max(1, min(threads, cells))


def summarize(rows: pd.DataFrame, axes: List[str], metrics: List[str]) -> pd.DataFrame:
    """
    Per-axis-value aggregates in the layout of a factorial results table, plus an overall row.

    Percentage differences get mean/max/min; other metrics their mean.
    """
    ok = rows[rows["error"] == ""]
    aggregations = {"cells": ("cell", "count")}
    for metric in metrics:
        if metric == "profit_difference_pct":
            aggregations[f"{metric}_mean"] = (metric, "mean")
            aggregations[f"{metric}_max"] = (metric, "max")
            aggregations[f"{metric}_min"] = (metric, "min")
        else:
            aggregations[f"{metric}_mean"] = (metric, "mean")

    frames = []
    for axis in axes:
        grouped = ok.groupby(axis, sort=True).agg(**aggregations).reset_index()
        grouped = grouped.rename(columns={axis: "value"})
        grouped.insert(0, "axis", axis)
        frames.append(grouped)
    overall = ok.assign(_all=0).groupby("_all").agg(**aggregations).reset_index(drop=True)
    overall.insert(0, "value", np.nan)
    overall.insert(0, "axis", "overall")
    frames.append(overall)
    return pd.concat(frames, ignore_index=True)


def run_factorial(grid: ExperimentGrid, threads: Optional[int] = None) -> FactorialResult:
    """
    Evaluate every grid cell and summarise by axis.

    Cells run on a thread pool capped by CONTRACTLAB_THREADS; rows keep cell order.

    Raises:
        GridTooLarge: If the grid exceeds its cap
    """
    cells = list(grid.cells())
    workers = _workers(threads, len(cells))
    LOGGER.info("running %d factorial cells on %d threads", len(cells), workers)
    if workers == 1:
        records = [evaluate_cell(i, cell) for i, cell in enumerate(cells)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(evaluate_cell, range(len(cells)), cells))

    axes = list(grid.axes)
    fixed = [name for name in grid.fixed if name not in grid.axes]
    columns = ["cell"] + axes + fixed + list(grid.metrics) + ["error"]
    rows = pd.DataFrame(records).reindex(columns=columns)
    failed = int((rows["error"] != "").sum())
    if failed:
        LOGGER.warning("%d of %d factorial cells failed", failed, len(rows))
    return FactorialResult(rows=rows, summary=summarize(rows, axes, list(grid.metrics)), failed=failed)


def render_summary(summary: pd.DataFrame) -> str:
    return summary.to_string(index=False, float_format=lambda v: f"{v:.4g}")
