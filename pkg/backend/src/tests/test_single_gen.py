import logging
import math

import numpy as np
import pytest
from scipy import optimize

from contract_lab.core import (
    LumpSumPenaltyTerms,
    MarketParams,
    UnitPenaltyTerms,
    WholesaleTerms,
    erlang_demand,
    exponential_demand,
)
from contract_lab.errors import NoViableMargin, ReservationTooHigh
from contract_lab.multi_gen import coordinating_wholesale
from contract_lab.numerics import SolveConfig, bisect_root, golden_section_max
from contract_lab.single_gen import (
    centralized_optimum,
    contract_profits,
    coordinated_lump_sum,
    coordinated_penalty_numeric,
    coordinated_unit_penalty,
    min_wholesale_for_reservation,
    oem_optimal_wholesale,
    oem_profit,
    small_margin_comparison,
    supplier_best_response,
    supplier_best_response_wholesale,
    supplier_profit,
    supplier_wholesale_value,
)

from conftest import random_markets


def _argmax(f, lo, hi):
    res = optimize.minimize_scalar(lambda x: -f(x), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-10 * max(1.0, hi)})
    return res.x


def test_high_tech_first_best(high_tech):
    x_star, pi_star = centralized_optimum(high_tech, exponential_demand(high_tech))
    assert x_star == pytest.approx(50 + 100 * math.log(100), rel=1e-12)
    assert x_star == pytest.approx(510.517, abs=1e-3)
    assert pi_star == pytest.approx(9.9e6 * 150 - 1e7 * math.log(100), rel=1e-12)


@pytest.mark.parametrize("p", random_markets(10))
def test_first_best_is_argmax_of_chain_profit(p):
    d = exponential_demand(p)
    x_star, pi_star = centralized_optimum(p, d)
    chain = lambda x: -p.c * x + (p.r - p.k) * d.expected_sales(x)  # noqa: E731
    assert x_star == pytest.approx(_argmax(chain, 0.0, d.base + 40 / d.rate), rel=1e-6)
    assert pi_star == pytest.approx(chain(x_star), rel=1e-12)


@pytest.mark.parametrize("shape", [2, 3, 5])
def test_first_best_erlang_satisfies_critical_fractile(small, shape):
    d = erlang_demand(small, shape)
    x_star, pi_star = centralized_optimum(small, d)
    assert d.survival(x_star) == pytest.approx(small.c / small.margin, rel=1e-8)
    assert pi_star == pytest.approx(-small.c * x_star + small.margin * d.expected_sales(x_star), rel=1e-12)


def test_first_best_requires_viable_margin():
    p = MarketParams(r=1.0, c=1.0, lam=1.0)
    with pytest.raises(NoViableMargin):
        centralized_optimum(p, exponential_demand(p))


class TestSupplierResponse:

    def test_zero_below_unit_cost(self, small):
        d = exponential_demand(small)
        assert supplier_best_response_wholesale(small, d, 0.5) == 0.0
        assert supplier_best_response(small, d, WholesaleTerms(w=0.99)) == 0.0

    @pytest.mark.parametrize("w", [1.5, 3.0, 8.0])
    def test_closed_form_matches_numeric(self, small, w):
        d = exponential_demand(small)
        x = supplier_best_response_wholesale(small, d, w)
        assert x == pytest.approx(small.b + math.log(w / small.c) / small.lam, rel=1e-12)
        assert x == pytest.approx(_argmax(lambda y: supplier_profit(small, d, w, y), 0.0, 40.0), rel=1e-6)

    @pytest.mark.parametrize("w", [1.5, 3.0, 8.0])
    def test_erlang_first_order_condition(self, small, w):
        d = erlang_demand(small, 3)
        x = supplier_best_response_wholesale(small, d, w)
        assert (w - small.k) * d.survival(x) == pytest.approx(small.c, rel=1e-8)

    def test_lump_sum_penalty_raises_capacity(self, small):
        d = exponential_demand(small)
        plain = supplier_best_response(small, d, WholesaleTerms(w=3.0))
        penalised = supplier_best_response(small, d, LumpSumPenaltyTerms(w=3.0, rho=2.0))
        assert penalised == pytest.approx(small.b + math.log((3.0 + 2.0 * small.lam) / small.c) / small.lam)
        assert penalised > plain

    def test_unit_penalty_capacity(self, small):
        d = exponential_demand(small)
        x = supplier_best_response(small, d, UnitPenaltyTerms(w=3.0, rho1=1.5))
        assert x == pytest.approx(small.b + math.log(4.5 / small.c) / small.lam)

    def test_penalty_response_erlang_matches_grid(self, small):
        d = erlang_demand(small, 2)
        terms = LumpSumPenaltyTerms(w=4.0, rho=1.0)
        x = supplier_best_response(small, d, terms)
        grid = [i * 0.01 for i in range(0, 2001)]
        best = max(contract_profits(small, d, terms, y)[0] for y in grid)
        assert contract_profits(small, d, terms, x)[0] >= best - 1e-9


@pytest.mark.parametrize("terms", [
    WholesaleTerms(w=4.0),
    LumpSumPenaltyTerms(w=4.0, rho=3.0),
    UnitPenaltyTerms(w=4.0, rho1=2.0),
])
def test_transfers_preserve_chain_profit(small, terms):
    d = erlang_demand(small, 2)
    x = 3.3
    pi_s, pi_m = contract_profits(small, d, terms, x)
    chain = -small.c * x + small.margin * d.expected_sales(x)
    assert pi_s + pi_m == pytest.approx(chain, rel=1e-12)


class TestOemWholesale:

    def test_high_tech_closed_form(self, high_tech):
        d = exponential_demand(high_tech)
        w, report = oem_optimal_wholesale(high_tech, d)
        assert w == pytest.approx(math.sqrt(1e7 * 1e5 / 1.5), rel=1e-12)
        assert report.contract == "wholesale"
        assert report.capacity == pytest.approx(supplier_best_response_wholesale(high_tech, d, w))
        assert report.chain_profit == pytest.approx(report.supplier_profit + report.oem_profit)
        assert 0 < report.efficiency < 1
        assert report.notes == []

    @pytest.mark.parametrize("p", random_markets(8, seed=5))
    def test_closed_form_is_oem_argmax(self, p):
        d = exponential_demand(p)
        if p.margin <= (p.b * p.lam + 1) * p.c:
            pytest.skip("closed form not applicable")
        w, _ = oem_optimal_wholesale(p, d)
        value = lambda v: oem_profit(p, d, v, supplier_best_response_wholesale(p, d, v))  # noqa: E731
        assert w == pytest.approx(_argmax(value, p.c + p.k, p.r), rel=1e-5)

    @pytest.mark.parametrize("lam,ratio,expected", [
        (1.0, 2.0, 0.76515),
        (1.0, 50.0, 0.929),
        (0.1, 50.0, 0.912),
    ])
    def test_efficiency_values(self, lam, ratio, expected):
        p = MarketParams(r=ratio, c=1.0, k=0.0, b=1.0, lam=lam)
        _, report = oem_optimal_wholesale(p, exponential_demand(p))
        assert report.efficiency == pytest.approx(expected, abs=6e-4)

    def test_golden_fallback_is_noted(self, small, caplog):
        d = erlang_demand(small, 3)
        with caplog.at_level(logging.WARNING):
            w, report = oem_optimal_wholesale(small, d)
        assert small.c + small.k < w < small.r
        assert any("closed form unavailable" in n for n in report.notes)
        assert "golden-section" in caplog.text
        assert report.efficiency <= 1.0

    def test_reservation_binding(self):
        p = MarketParams(r=10.0, c=1.0, k=0.0, b=1.0, lam=1.0, reservation=3.0)
        d = exponential_demand(p)
        w, report = oem_optimal_wholesale(p, d)
        assert w > math.sqrt(10.0 / 2.0)
        assert supplier_wholesale_value(p, d, w) == pytest.approx(3.0, rel=1e-9)
        assert report.supplier_profit == pytest.approx(3.0, rel=1e-9)
        assert any("reservation profit binds" in n for n in report.notes)

    def test_reservation_slack(self):
        p = MarketParams(r=10.0, c=1.0, k=0.0, b=1.0, lam=1.0, reservation=1.0)
        w, report = oem_optimal_wholesale(p, exponential_demand(p))
        assert w == pytest.approx(math.sqrt(5.0), rel=1e-12)
        assert report.supplier_profit > 1.0

    def test_reservation_erlang_binding(self):
        p = MarketParams(r=10.0, c=1.0, k=0.0, b=1.0, lam=1.0, reservation=4.0)
        d = erlang_demand(p, 2)
        w, report = oem_optimal_wholesale(p, d)
        assert report.supplier_profit >= 4.0 - 1e-6

    def test_reservation_too_high(self):
        p = MarketParams(r=10.0, c=1.0, k=0.0, b=1.0, lam=1.0, reservation=1e3)
        with pytest.raises(ReservationTooHigh):
            oem_optimal_wholesale(p, exponential_demand(p))


class TestSmallMarginComparison:
    def test_fields_agree_with_contract_solvers(self):
        p = MarketParams(r=11.0, c=1.0, k=0.0, b=1.0, lam=0.5, delta=0.9)
        d = exponential_demand(p)
        row = small_margin_comparison(p)
        assert row.margin_ratio == pytest.approx(11.0)
        assert row.coordinating_price == pytest.approx(coordinating_wholesale(p, d), rel=1e-12)
        assert row.coordinating_price_ratio == pytest.approx(row.coordinating_price / 11.0, rel=1e-12)
        assert row.lump_sum_penalty == pytest.approx(coordinated_lump_sum(p, d).penalty, rel=1e-12)
        assert row.unit_penalty == pytest.approx(coordinated_unit_penalty(p, d).penalty, rel=1e-12)
        assert row.lump_sum_penalty * 0.5 == pytest.approx(row.unit_penalty, rel=1e-9)
        assert 1.0 < row.coordinating_price < 11.0


class TestWholesaleProperties:

    @pytest.mark.parametrize("p", random_markets(20, seed=41))
    def test_supplier_value_nonnegative_above_unit_cost(self, p):
        d = exponential_demand(p)
        scale = p.r * (p.b + 1.0 / p.lam)
        for w in np.linspace(p.c + p.k, p.r, 50):
            assert supplier_wholesale_value(p, d, w) >= -1e-12 * scale

    @pytest.mark.parametrize("p", random_markets(20, seed=43))
    def test_response_at_retail_price_is_first_best(self, p):
        d = exponential_demand(p)
        x_star, _ = centralized_optimum(p, d)
        assert supplier_best_response_wholesale(p, d, p.r) == pytest.approx(x_star, rel=1e-9)

    @pytest.mark.parametrize("p", random_markets(12, seed=47))
    def test_golden_section_recovers_closed_form_price(self, p):
        d = exponential_demand(p)
        m = p.b * p.lam + 1.0
        if p.margin <= m * p.c:
            pytest.skip("closed form not applicable")
        value = lambda v: oem_profit(p, d, v, supplier_best_response_wholesale(p, d, v))  # noqa: E731
        found = golden_section_max(value, SolveConfig.for_bracket(p.c + p.k, p.r, abs_tol=1e-10 * p.r))
        assert found.x == pytest.approx(p.k + math.sqrt(p.margin * p.c / m), rel=1e-6)

    def test_golden_section_small_market(self, small):
        d = exponential_demand(small)
        value = lambda v: oem_profit(small, d, v, supplier_best_response_wholesale(small, d, v))  # noqa: E731
        found = golden_section_max(value, SolveConfig.for_bracket(1.0, 10.0, abs_tol=1e-10))
        assert found.x == pytest.approx(math.sqrt(5.0), rel=1e-6)


class TestReservationThreshold:

    @pytest.mark.parametrize("p", random_markets(10, seed=53))
    def test_zero_reservation_is_unit_cost(self, p):
        assert min_wholesale_for_reservation(p) == pytest.approx(p.c + p.k, rel=1e-10)

    def test_matches_bisection(self):
        p = MarketParams(r=10.0, c=1.0, k=0.0, b=1.0, lam=1.0, reservation=1.0)
        d = exponential_demand(p)
        cfg = SolveConfig.for_bracket(1.0, 10.0, abs_tol=1e-14, rel_tol=1e-15)
        oracle = bisect_root(lambda w: supplier_wholesale_value(p, d, w) - 1.0, cfg)
        assert min_wholesale_for_reservation(p, d) == pytest.approx(oracle, rel=1e-8)

    @pytest.mark.parametrize("p", random_markets(10, seed=59))
    def test_supplier_earns_exactly_the_reservation(self, p):
        d = exponential_demand(p)
        _, pi_star = centralized_optimum(p, d)
        for share in (0.1, 0.5, 0.9):
            q = p.model_copy(update={"reservation": share * pi_star})
            w_min = min_wholesale_for_reservation(q, d)
            assert p.c + p.k < w_min < p.r
            assert supplier_wholesale_value(q, d, w_min) == pytest.approx(share * pi_star, rel=1e-9)

    def test_first_best_reservation_needs_retail_price(self, small):
        _, pi_star = centralized_optimum(small, exponential_demand(small))
        q = small.model_copy(update={"reservation": pi_star})
        assert min_wholesale_for_reservation(q) == pytest.approx(small.r, rel=1e-9)

    def test_huge_reservation_exceeds_retail_price(self, small):
        d = exponential_demand(small)
        _, pi_star = centralized_optimum(small, d)
        q = small.model_copy(update={"reservation": 10.0 * pi_star})
        w_min = min_wholesale_for_reservation(q, d)
        assert math.isfinite(w_min)
        assert w_min > small.r
        assert supplier_wholesale_value(q, d, w_min) == pytest.approx(10.0 * pi_star, rel=1e-9)


class TestNumericPenalty:

    @pytest.mark.parametrize("kind,closed_form", [
        ("lump_sum", coordinated_lump_sum),
        ("unit_penalty", coordinated_unit_penalty),
    ])
    def test_single_phase_erlang_matches_closed_form(self, high_tech, kind, closed_form):
        numeric = coordinated_penalty_numeric(high_tech, erlang_demand(high_tech, 1), kind)
        exact = closed_form(high_tech, exponential_demand(high_tech))
        assert numeric.w_hat == pytest.approx(exact.w_hat, rel=1e-9)
        assert numeric.penalty == pytest.approx(exact.penalty, rel=1e-9)
        assert numeric.capacity == pytest.approx(exact.capacity, rel=1e-9)

    @pytest.fixture
    def three_phase(self):
        """High-tech market with an Erlang(0.03, 3) tail: same mean as Exp(0.01)."""
        p = MarketParams(r=1e7, c=1e5, k=0.0, b=50.0, lam=0.03)
        return p, erlang_demand(p, 3)

    def test_three_phase_instance(self, three_phase):
        p, d = three_phase
        solution = coordinated_penalty_numeric(p, d)
        x_star, pi_star = centralized_optimum(p, d)
        assert solution.capacity == x_star
        assert x_star == pytest.approx(330.198, abs=0.01)
        assert solution.w_hat == pytest.approx(0.248252e6, rel=5e-4)
        assert solution.penalty == pytest.approx(411.6e6, rel=5e-4)
        assert solution.enforceability.shortfall_probability == pytest.approx(0.01, rel=1e-8)
        assert solution.enforceability.penalty_to_best_case_ratio == pytest.approx(8.408, abs=0.01)
        assert solution.supplier_profit == pytest.approx(0.0, abs=1e-6 * pi_star)
        assert solution.oem_profit == pytest.approx(pi_star, rel=1e-9)

    def test_three_phase_first_order_condition(self, three_phase):
        p, d = three_phase
        solution = coordinated_penalty_numeric(p, d)
        x, h = solution.capacity, 1e-5 * solution.capacity
        profit = lambda y: contract_profits(p, d, solution.terms(), y)[0]  # noqa: E731
        assert abs(profit(x + h) - profit(x - h)) / (2 * h) <= 1e-4 * p.c
        assert supplier_best_response(p, d, solution.terms()) == pytest.approx(x, rel=1e-6)
