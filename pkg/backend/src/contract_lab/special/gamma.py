"""
Regularized incomplete gamma for positive integer shape.

With integer shape the functions reduce to finite Poisson sums, which is all the
Erlang tail ever needs.
"""

import math


def _check(n: int, z: float) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f"shape must be a positive integer, got {n!r}")
    if z < 0 or math.isnan(z):
        raise ValueError(f"argument must be non-negative, got {z!r}")


def _poisson_head(n: int, z: float) -> float:
    """e^{-z} * sum_{j<n} z^j / j!, evaluated term by term in log space."""
    if z == 0.0:
        return 1.0
    log_z = math.log(z)
    total = 0.0
    for j in range(n):
        total += math.exp(-z + j * log_z - math.lgamma(j + 1))
    return total


def _poisson_tail(n: int, z: float) -> float:
    """e^{-z} * sum_{j>=n} z^j / j!, used when the result is small (z < n)."""
    if z == 0.0:
        return 0.0
    log_z = math.log(z)
    term = math.exp(-z + n * log_z - math.lgamma(n + 1))
    total = 0.0
    j = n
    while term > 0.0:
        total += term
        j += 1
        term *= z / j
        if term < 1e-17 * total:
            break
    return total


def reg_lower_gamma_int(n: int, z: float) -> float:
    """
    Regularized lower incomplete gamma P(n, z) = gamma(n, z) / (n-1)!.

    Args:
        n: Positive integer shape
        z: Non-negative argument

    Returns:
        P(n, z) in [0, 1]

    Examples:
        >>> reg_lower_gamma_int(1, 0.0)
        0.0
        >>> round(reg_lower_gamma_int(3, 3.0), 6)
        0.57681
    """
    _check(n, z)
    if z == 0.0:
        return 0.0
    if n == 1:
        return -math.expm1(-z)
    if z < n:
        value = _poisson_tail(n, z)
    else:
        value = 1.0 - _poisson_head(n, z)
    return min(max(value, 0.0), 1.0)


def reg_upper_gamma_int(n: int, z: float) -> float:
    """Complement Q(n, z) = 1 - P(n, z), computed without cancellation for large z."""
    _check(n, z)
    if z == 0.0:
        return 1.0
    if n == 1:
        return math.exp(-z)
    if z < n:
        value = 1.0 - _poisson_tail(n, z)
    else:
        value = _poisson_head(n, z)
    return min(max(value, 0.0), 1.0)
