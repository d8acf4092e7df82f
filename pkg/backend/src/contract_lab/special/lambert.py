"""
Real Lambert W function on both real branches, plus an overflow-safe W(e^y).

Initial guesses follow the usual scheme: a branch-point series near -1/e and the
log-log asymptotic expansion elsewhere, refined with Halley's method.
"""

import logging
import math
from enum import Enum

from ..errors import DomainError

LOGGER = logging.getLogger(__name__)

BRANCH_POINT = -math.exp(-1.0)
DOMAIN_TOL = 1e-12
MAX_ITER = 50
STEP_TOL = 1e-14


class WBranch(str, Enum):
    """Real branches of W."""
    PRINCIPAL = "principal"
    MINUS_ONE = "minus_one"


def _branch_point_series(x: float, branch: WBranch) -> float:
    # p = +/- sqrt(2(ex + 1)); sign selects the branch
    p = math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0))
    if branch is WBranch.MINUS_ONE:
        p = -p
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3


def _initial_guess(x: float, branch: WBranch) -> float:
    near_branch_point = math.e * x + 1.0 < 0.3
    if near_branch_point:
        return _branch_point_series(x, branch)
    if branch is WBranch.PRINCIPAL:
        if x < 2.0:
            return math.log1p(x)
        l1 = math.log(x)
        l2 = math.log(l1)
        return l1 - l2 + l2 / l1
    l1 = math.log(-x)
    l2 = math.log(-l1)
    return l1 - l2 + l2 / l1


def _halley(x: float, w: float) -> float:
    for _ in range(MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            return w
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1) if wp1 != 0.0 else 0.0
        if denom == 0.0:
            return w
        step = f / denom
        w -= step
        if abs(step) < STEP_TOL * (1.0 + abs(w)):
            return w
    LOGGER.debug("Halley iteration hit %d iterations at x=%r", MAX_ITER, x)
    return w


def lambert_w(branch: WBranch, x: float) -> float:
    """
    Evaluate W on the requested real branch.

    Args:
        branch: WBranch.PRINCIPAL (x >= -1/e, returns w >= -1) or
                WBranch.MINUS_ONE (-1/e <= x < 0, returns w <= -1)
        x: Argument

    Returns:
        w with w * exp(w) == x to ~1e-10 relative

    Raises:
        DomainError: If x lies outside the branch domain
    """
    branch = WBranch(branch)
    x = float(x)
    if math.isnan(x):
        raise DomainError(x, branch.value)
    if x < BRANCH_POINT - DOMAIN_TOL:
        raise DomainError(x, branch.value)
    if branch is WBranch.MINUS_ONE and x >= 0.0:
        raise DomainError(x, branch.value)
    if x <= BRANCH_POINT:
        return -1.0
    if branch is WBranch.PRINCIPAL:
        if x == 0.0:
            return 0.0
        if math.isinf(x):
            return math.inf
    w = _halley(x, _initial_guess(x, branch))
    # Halley can overshoot across -1 right next to the branch point
    if branch is WBranch.PRINCIPAL:
        return max(w, -1.0)
    return min(w, -1.0)


def lambert_w0_of_exp(y: float) -> float:
    """
    Principal W evaluated at e^y without forming e^y.

    For y >= 1 solves w + ln(w) = y directly; below that the argument is small
    enough to exponentiate and lambert_w is used.
    """
    y = float(y)
    if y < 1.0:
        return lambert_w(WBranch.PRINCIPAL, math.exp(y))
    w = y - math.log(y) if y > 1.0 else 1.0
    for _ in range(MAX_ITER):
        g = w + math.log(w) - y
        if g == 0.0:
            break
        g1 = 1.0 + 1.0 / w
        g2 = -1.0 / (w * w)
        step = g / (g1 - g * g2 / (2.0 * g1))
        w_next = w - step
        if w_next <= 0.0:
            w_next = w / 2.0
        w = w_next
        if abs(step) < STEP_TOL * (1.0 + abs(w)):
            break
    return w


def lambert_wm1_of_negexp(t: float) -> float:
    """
    Branch -1 of W evaluated at -e^{-t} without forming e^{-t}.

    Returns -u where u >= 1 solves u - ln(u) = t. Defined for t >= 1 (t = 1 is the
    branch point -1/e).

    Raises:
        DomainError: If t < 1, i.e. the argument lies below -1/e
    """
    t = float(t)
    if math.isnan(t) or t < 1.0 - DOMAIN_TOL:
        raise DomainError(-math.exp(-t) if not math.isnan(t) else t, WBranch.MINUS_ONE.value)
    if t <= 2.0:
        return lambert_w(WBranch.MINUS_ONE, -math.exp(-t))
    u = t + math.log(t)
    for _ in range(MAX_ITER):
        g = u - math.log(u) - t
        step = g / (1.0 - 1.0 / u)
        u -= step
        if abs(step) < STEP_TOL * u:
            break
    return -u
