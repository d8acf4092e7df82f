"""
Bracketing univariate solvers: golden-section maximisation and bisection.

Both are deterministic; identical inputs give bit-identical outputs.
"""

import logging
import math
from typing import Callable, List, Tuple

from ..errors import MaxIterExceeded, NoSignChange
from .models import SolveConfig, SolveResult

LOGGER = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_iterations(width: float, tol: float) -> int:
    """Steps needed to shrink a bracket of `width` below `tol`."""
    if width <= tol:
        return 0
    return int(math.ceil(math.log(tol / width) / math.log(INV_PHI)))


def golden_section_max(f: Callable[[float], float], cfg: SolveConfig) -> SolveResult:
    """
    Golden-section search for the maximum of a unimodal f on cfg.bracket.

    Returns:
        SolveResult with the midpoint of the final bracket, f there, and iterations used

    Raises:
        MaxIterExceeded: If the tolerance needs more than cfg.max_iter steps
    """
    a, b = cfg.bracket
    tol = cfg.width_tol
    h = b - a
    n = golden_iterations(h, tol)
    if n > cfg.max_iter:
        raise MaxIterExceeded(f"golden-section needs {n} iterations, cap is {cfg.max_iter}")
    if n == 0:
        x = (a + b) / 2
        return SolveResult(x=x, value=f(x), iterations=0)

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    if yc > yd:
        lo, hi = a, d
    else:
        lo, hi = c, b
    x = (lo + hi) / 2
    return SolveResult(x=x, value=f(x), iterations=n)


def bisect_root(g: Callable[[float], float], cfg: SolveConfig) -> float:
    """
    Bisection for a root of g on cfg.bracket.

    Stops when |g(mid)| <= abs_tol or the bracket is narrower than the width tolerance.

    Raises:
        NoSignChange: If g(lo) and g(hi) have the same strict sign
        MaxIterExceeded: If cfg.max_iter halvings are not enough
    """
    lo, hi = cfg.bracket
    g_lo = g(lo)
    if g_lo == 0.0:
        return lo
    g_hi = g(hi)
    if g_hi == 0.0:
        return hi
    if g_lo * g_hi > 0:
        raise NoSignChange(f"g({lo})={g_lo:.6g} and g({hi})={g_hi:.6g} share a sign")

    tol = cfg.width_tol
    for _ in range(cfg.max_iter):
        mid = lo + (hi - lo) / 2
        g_mid = g(mid)
        if g_mid == 0.0 or abs(g_mid) <= cfg.abs_tol:
            return mid
        if (g_mid < 0) == (g_lo < 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
        if hi - lo <= tol:
            return lo + (hi - lo) / 2
    raise MaxIterExceeded(f"bisection did not converge in {cfg.max_iter} iterations")


def grid_guard(f: Callable[[float], float], lo: float, hi: float, points: int = 200) -> Tuple[float, float]:
    """
    Coarse scan used to double-check golden-section on functions whose unimodality is asserted, not proven.

    Returns:
        (argmax on the grid, grid spacing)
    """
    step = (hi - lo) / (points - 1)
    xs: List[float] = [lo + i * step for i in range(points)]
    best = max(xs, key=f)
    return best, step


def maximize_capacity(objective: Callable[[float], float], marginal: Callable[[float], float],
                      lo: float, hi: float, scale: float) -> SolveResult:
    """
    Golden-section on objective over [lo, hi], then a local bisection polish on its analytic derivative.

    The polish runs on a window a thousand golden tolerances wide around the golden-section
    point and is skipped when the derivative has no sign change there (corner optimum).

    Args:
        objective: Expected profit as a function of capacity
        marginal: Its derivative
        lo, hi: Capacity bracket
        scale: Characteristic capacity (b + n/lambda); tolerances are relative to it
    """
    golden = golden_section_max(objective, SolveConfig.for_bracket(lo, hi, abs_tol=1e-9 * scale))
    window = 1e-6 * scale
    a, b = max(lo, golden.x - window), min(hi, golden.x + window)
    try:
        x = bisect_root(marginal, SolveConfig.for_bracket(a, b, abs_tol=1e-14 * scale, rel_tol=1e-15))
    except NoSignChange:
        LOGGER.debug("no stationary point near %.12g; keeping golden-section result", golden.x)
        return golden
    value = objective(x)
    if value < golden.value:
        return golden
    return SolveResult(x=x, value=value, iterations=golden.iterations)
