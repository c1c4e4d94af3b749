"""Smoke tests for the python bindings: the main operations round-trip
through the extension with sane values."""

import math

import pytest

import breadline


PREFS = dict(phi=0.8196, f_bar=0.0564, eta=2.0, beta=0.975)


def test_demand_budget_identity():
    c, f = breadline.demand(p=2.49, y_exp=1.3, **PREFS)
    assert c > 0 and f > PREFS["f_bar"]
    assert c + 2.49 * f == pytest.approx(1.3, rel=1e-14)
    share = breadline.food_share(p=2.49, y_exp=1.3, **PREFS)
    assert share == pytest.approx(2.49 * f / 1.3, rel=1e-12)


def test_subsistence_violation_raises():
    with pytest.raises(breadline.ModelError):
        breadline.demand(p=2.49, y_exp=0.05, **PREFS)


def test_equivalent_variation_sign_and_identity():
    ev = breadline.equivalent_variation(p0=1.0, y0=1.0, p1=1.2, y1=1.0, **PREFS)
    assert ev < 0
    lhs = breadline.indirect_utility(p=1.0, y_exp=1.0 + ev, **PREFS)
    rhs = breadline.indirect_utility(p=1.2, y_exp=1.0, **PREFS)
    assert lhs == pytest.approx(rhs, rel=1e-10)
    approx = breadline.engel_approximation(0.4, 0.1)
    assert approx == pytest.approx(-0.04)


def test_discretize_ar1_invariants():
    chain = breadline.discretize_ar1(rho=0.23, sigma=0.55, n_states=5)
    levels, pi = chain["levels"], chain["stationary"]
    assert levels == sorted(levels)
    assert sum(pi) == pytest.approx(1.0, abs=1e-12)
    mean = sum(p * t for p, t in zip(pi, levels))
    assert mean == pytest.approx(1.0, abs=1e-10)
    for row in chain["transition"]:
        assert sum(row) == pytest.approx(1.0, abs=1e-12)


def test_weighted_damage_and_stats():
    loss = breadline.weighted_damage([(-30.0, 0.6), (-10.0, 0.4)])
    assert loss == pytest.approx(-22.0)
    assert breadline.gini([0.0, 3.0], [0.5, 0.5]) == pytest.approx(0.5)
    assert breadline.ratio_8020([1.0, 9.0], [0.5, 0.5]) == pytest.approx(9.0)


SMALL = {
    "income": {"sigma": 0.45, "n_states": 3},
    "grid": {"size": 50},
}


def test_solve_steady_state_summary():
    out = breadline.solve_steady_state(SMALL)
    assert out["prices"]["p"] == pytest.approx(2.49)
    assert out["prices"]["r"] - 1.0 < 1.0 / PREFS["beta"] - 1.0
    assert out["labor"] == pytest.approx(1.0, abs=1e-9)
    assert out["diagnostics"]["clearing_residual"] < 1e-6
    assert out["diagnostics"]["euler_max"] < 1e-6
    # Aggregate budget identity.
    assert out["consumption"] + out["prices"]["p"] * out["food"] == pytest.approx(
        out["expenditures"], rel=1e-10
    )


def test_compare_scenarios_sign_pattern():
    base = dict(SMALL)
    alt = dict(SMALL)
    alt["scenario"] = {"name": "baseline"}
    rep = breadline.compare_scenarios(base, alt)
    assert rep["dy_food_pct"] < 0
    assert rep["dcapital_pct"] > 0
    assert rep["d_mean_food_share"] > 0
    assert len(rep["deciles"]) == 10
    row = rep["deciles"][0]
    total = (
        row["labor_delta"]
        + row["capital_return_delta"]
        + row["capital_saving_delta"]
    )
    assert row["total_income_delta"] == pytest.approx(total, abs=1e-12)
