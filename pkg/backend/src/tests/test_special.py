import math

import numpy as np
import pytest
from scipy import special

from contract_lab.errors import DomainError
from contract_lab.special import (
    WBranch,
    lambert_w,
    lambert_w0_of_exp,
    lambert_wm1_of_negexp,
    reg_lower_gamma_int,
    reg_upper_gamma_int,
)

rng = np.random.default_rng(7)
PRINCIPAL_ARGS = list(np.concatenate([
    -math.exp(-1) + rng.uniform(1e-6, 0.3, 20),
    rng.uniform(-0.3, 5.0, 20),
    10.0 ** rng.uniform(1, 300, 20),
]))
MINUS_ONE_ARGS = list(np.concatenate([
    -math.exp(-1) + rng.uniform(1e-6, 0.3, 20),
    -(10.0 ** rng.uniform(-250, -1, 20)),
]))


@pytest.mark.parametrize("x", PRINCIPAL_ARGS)
def test_principal_branch_matches_scipy(x):
    w = lambert_w(WBranch.PRINCIPAL, x)
    assert w == pytest.approx(special.lambertw(x, 0).real, rel=1e-9, abs=1e-12)
    assert w >= -1.0


@pytest.mark.parametrize("x", MINUS_ONE_ARGS)
def test_minus_one_branch_matches_scipy(x):
    w = lambert_w(WBranch.MINUS_ONE, x)
    assert w == pytest.approx(special.lambertw(x, -1).real, rel=1e-9)
    assert w <= -1.0


@pytest.mark.parametrize("x", PRINCIPAL_ARGS[20:40])
def test_round_trip(x):
    w = lambert_w(WBranch.PRINCIPAL, x)
    assert w * math.exp(w) == pytest.approx(x, rel=1e-9, abs=1e-15)


def test_branch_point_and_zero():
    assert lambert_w(WBranch.PRINCIPAL, -math.exp(-1)) == -1.0
    assert lambert_w(WBranch.MINUS_ONE, -math.exp(-1)) == -1.0
    assert lambert_w(WBranch.PRINCIPAL, 0.0) == 0.0
    assert lambert_w("principal", math.e) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("branch,x", [
    (WBranch.PRINCIPAL, -0.5),
    (WBranch.MINUS_ONE, -0.5),
    (WBranch.MINUS_ONE, 0.0),
    (WBranch.MINUS_ONE, 1.0),
    (WBranch.PRINCIPAL, float("nan")),
])
def test_domain_errors(branch, x):
    with pytest.raises(DomainError):
        lambert_w(branch, x)


@pytest.mark.parametrize("y", [-20.0, -1.0, 0.0, 0.5, 1.0, 3.0, 50.0, 700.0])
def test_w0_of_exp_matches_direct_evaluation(y):
    assert lambert_w0_of_exp(y) == pytest.approx(special.lambertw(math.exp(y)).real, rel=1e-11)


@pytest.mark.parametrize("y", [1e3, 1e5, 4e6])
def test_w0_of_exp_beyond_overflow(y):
    w = lambert_w0_of_exp(y)
    assert math.isfinite(w)
    assert w + math.log(w) == pytest.approx(y, rel=1e-14)


@pytest.mark.parametrize("t", [1.2, 1.5, 2.0, 2.5, 10.0, 100.0])
def test_wm1_of_negexp_matches_scipy(t):
    assert lambert_wm1_of_negexp(t) == pytest.approx(special.lambertw(-math.exp(-t), -1).real, rel=1e-10)


def test_wm1_of_negexp_without_underflow():
    u = -lambert_wm1_of_negexp(1e4)
    assert u - math.log(u) == pytest.approx(1e4, rel=1e-14)


def test_wm1_of_negexp_domain():
    with pytest.raises(DomainError):
        lambert_wm1_of_negexp(0.5)


GAMMA_CASES = [(n, z) for n in (1, 2, 3, 4, 5, 10, 25) for z in (0.0, 1e-8, 0.3, 1.0, 2.9, 3.0, 7.5, 30.0, 300.0)]


@pytest.mark.parametrize("n,z", GAMMA_CASES)
def test_incomplete_gamma_matches_scipy(n, z):
    assert reg_lower_gamma_int(n, z) == pytest.approx(special.gammainc(n, z), rel=1e-11, abs=1e-300)
    assert reg_upper_gamma_int(n, z) == pytest.approx(special.gammaincc(n, z), rel=1e-11, abs=1e-300)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_incomplete_gamma_monotone_and_complementary(n):
    zs = np.linspace(0.0, 40.0, 401)
    lower = [reg_lower_gamma_int(n, z) for z in zs]
    assert all(b - a >= -1e-14 for a, b in zip(lower, lower[1:]))
    for z, p in zip(zs, lower):
        assert p + reg_upper_gamma_int(n, z) == pytest.approx(1.0, abs=1e-14)


def test_incomplete_gamma_rejects_bad_input():
    with pytest.raises(ValueError):
        reg_lower_gamma_int(0, 1.0)
    with pytest.raises(ValueError):
        reg_upper_gamma_int(2, -1.0)
    with pytest.raises(ValueError):
        reg_lower_gamma_int(2.5, 1.0)


def test_wm1_of_negexp_at_branch_point():
    assert lambert_wm1_of_negexp(1.0) == -1.0


@pytest.mark.parametrize("branch,lo,hi", [
    (WBranch.PRINCIPAL, -1.0, 50.0),
    (WBranch.MINUS_ONE, -30.0, -1.0),
])
def test_round_trip_on_random_points(branch, lo, hi):
    ws = np.random.default_rng(11).uniform(lo, hi, 10_000)
    worst = max(abs(lambert_w(branch, w * math.exp(w)) - w) for w in ws)
    assert worst <= 1e-9


def test_w0_of_exp_strictly_increasing():
    values = [lambert_w0_of_exp(y) for y in np.linspace(-40.0, 2000.0, 1000)]
    assert all(b > a for a, b in zip(values, values[1:]))
