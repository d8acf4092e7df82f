"""
Shared fixtures and seeded parameter draws.
"""

import numpy as np
import pytest

import contract_lab
from contract_lab.core import MarketParams

SEED = 20240601


@pytest.fixture
def high_tech():
    """High-tech example: r = 10^7, c = 10^5, k = 0, b = 50, E[A] = 100."""
    return MarketParams(r=1e7, c=1e5, k=0.0, b=50.0, lam=0.01)


@pytest.fixture
def small():
    return MarketParams(r=10.0, c=1.0, k=0.0, b=1.0, lam=1.0)


@pytest.fixture
def renewal_market():
    """b = 1, lambda = 1, delta = 0.9, c = 1, k = 0, r = 11."""
    return MarketParams(r=11.0, c=1.0, k=0.0, b=1.0, lam=1.0, delta=0.9)


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    monkeypatch.setenv("CONTRACTLAB_OUTPUT_DIR", str(tmp_path / "output"))
    monkeypatch.setenv("CONTRACTLAB_THREADS", "2")
    contract_lab.reload_settings()
    yield
    contract_lab.reload_settings()


def random_markets(count, seed=SEED, with_delta=False, margin_max=50.0):
    """Markets satisfying both standing assumptions (r - k - c > c, 1/lambda >= b)."""
    rng = np.random.default_rng(seed)
    markets = []
    while len(markets) < count:
        c = rng.uniform(0.5, 2.0)
        k = rng.uniform(0.0, 1.0)
        ratio = rng.uniform(2.2, margin_max)
        lam = rng.uniform(0.1, 2.0)
        b = rng.uniform(0.0, 1.0 / lam)
        delta = rng.uniform(0.05, 0.95) if with_delta else None
        markets.append(MarketParams(r=k + ratio * c, c=c, k=k, b=b, lam=lam, delta=delta))
    return markets
