"""
Figure data series: one x column and one column per series.
"""

import logging
from typing import Callable, Dict, List

import numpy as np
import pandas as pd

from ..core.models import MarketParams, erlang_demand, exponential_demand
from ..errors import UnknownFigure
from ..multi_gen import coordinated_renewal_report, coordinating_wholesale, supplier_best_response_endogenous
from ..single_gen import oem_optimal_wholesale, supplier_best_response_wholesale

LOGGER = logging.getLogger(__name__)

MARGIN_RATIOS = np.arange(2.0, 51.0)
# extended tail for the limiting OEM share
FRACTION_RATIOS = np.concatenate([MARGIN_RATIOS, [100.0, 1e3, 1e4, 1e5, 1e6]])
FIG_DELTAS = (0.3, 0.6, 0.9)
FIG_BASES = (0.0, 1.0, 5.0)


def _tag(value: float) -> str:
    """Column-name friendly number: 0.9 -> '0p9', 10.0 -> '10'."""
    text = f"{value:g}"
    return text.replace(".", "p")


def eff_wholesale() -> pd.DataFrame:
    """Efficiency of the OEM-optimal wholesale price; b = 1, c = 1, k = 0."""
    frame = pd.DataFrame({"margin_ratio": MARGIN_RATIOS})
    for mean_tail in (1.0, 2.0, 10.0):
        values = []
        for ratio in MARGIN_RATIOS:
            p = MarketParams(r=ratio, c=1.0, k=0.0, b=1.0, lam=1.0 / mean_tail)
            values.append(oem_optimal_wholesale(p, exponential_demand(p))[1].efficiency)
        frame[f"efficiency_mean_tail_{_tag(mean_tail)}"] = values
    return frame


def capacity_compare() -> pd.DataFrame:
    """Supplier capacity against w with exogenous and endogenous renewal; b = 1, lambda = 1, delta = 0.9."""
    p = MarketParams(r=11.0, c=1.0, k=0.0, b=1.0, lam=1.0, delta=0.9)
    d = exponential_demand(p)
    prices = np.linspace(1.0, 10.0, 91)
    return pd.DataFrame({
        "wholesale_price": prices,
        "capacity_exogenous": [supplier_best_response_wholesale(p, d, w) for w in prices],
        "capacity_endogenous": [supplier_best_response_endogenous(p, d, w) for w in prices],
    })


def coord_price() -> pd.DataFrame:
    """Coordinating price w^delta against (r - k)/c; b = 1, lambda = 1, c = 1, k = 0."""
    frame = pd.DataFrame({"margin_ratio": MARGIN_RATIOS})
    for delta in FIG_DELTAS:
        values = []
        for ratio in MARGIN_RATIOS:
            p = MarketParams(r=ratio, c=1.0, k=0.0, b=1.0, lam=1.0, delta=delta)
            values.append(coordinating_wholesale(p, exponential_demand(p)))
        frame[f"w_delta_{_tag(delta)}"] = values
    return frame


def _fraction_frame(ratios: np.ndarray, series: Dict[str, Callable[[float], float]]) -> pd.DataFrame:
    frame = pd.DataFrame({"margin_ratio": ratios})
    for name, fraction in series.items():
        frame[name] = [fraction(ratio) for ratio in ratios]
    return frame


def _fraction(b: float, delta: float, shape: int = 1) -> Callable[[float], float]:
    def evaluate(ratio: float) -> float:
        p = MarketParams(r=ratio, c=1.0, k=0.0, b=b, lam=1.0, delta=delta)
        d = exponential_demand(p) if shape == 1 else erlang_demand(p, shape)
        return coordinated_renewal_report(p, d).oem_fraction
    return evaluate


def npv_fraction() -> pd.DataFrame:
    """OEM share of the first-best NPV under w^delta, by base demand and delta; lambda = 1."""
    series = {
        f"fraction_b{_tag(b)}_delta{_tag(delta)}": _fraction(b, delta)
        for b in FIG_BASES for delta in FIG_DELTAS
    }
    return _fraction_frame(FRACTION_RATIOS, series)


def erlang_fraction() -> pd.DataFrame:
    """OEM share under w^delta with Erlang(1, n) tails; delta = 0.9."""
    series = {
        f"fraction_b{_tag(b)}_n{n}": _fraction(b, 0.9, n)
        for b in FIG_BASES for n in (1, 2, 3, 5)
    }
    return _fraction_frame(MARGIN_RATIOS, series)


def erlang_delta() -> pd.DataFrame:
    """OEM share under w^delta with an Erlang(1, 3) tail and b = 1, by delta."""
    series = {f"fraction_delta{_tag(delta)}": _fraction(1.0, delta, 3) for delta in (0.5, 0.7, 0.9)}
    return _fraction_frame(MARGIN_RATIOS, series)


FIGURES: Dict[str, Callable[[], pd.DataFrame]] = {
    "eff_wholesale": eff_wholesale,
    "capacity_compare": capacity_compare,
    "coord_price": coord_price,
    "npv_fraction": npv_fraction,
    "erlang_fraction": erlang_fraction,
    "erlang_delta": erlang_delta,
}


def figure_ids() -> List[str]:
    return list(FIGURES)


def emit_figure_data(figure_id: str) -> pd.DataFrame:
    """
    Raises:
        UnknownFigure: If figure_id is not one of figure_ids()
    """
    try:
        builder = FIGURES[figure_id]
    except KeyError:
        raise UnknownFigure(f"unknown figure {figure_id!r}; known: {', '.join(FIGURES)}") from None
    LOGGER.info("building figure data %s", figure_id)
    return builder()
