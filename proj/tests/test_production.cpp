#include <cmath>
#include <sstream>

#include "doctest.h"

#include "breadline/production.hpp"

using namespace breadline;

TEST_CASE("technology invariants") {
    const Technology tech = Technology::from_gap(0.36, 0.08, 1.0, 2.49);
    CHECK(tech.gap == doctest::Approx(2.49).epsilon(1e-15));
    CHECK(tech.a_f == doctest::Approx(1.0 / 2.49).epsilon(1e-15));
    CHECK_THROWS_AS(Technology(1.2, 0.08, 1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(Technology(0.36, 0.0, 1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(Technology::from_gap(0.36, 0.08, 1.0, -1.0), ParameterError);
}

TEST_CASE("climate scenarios scale sector productivities") {
    const Technology tech = Technology::from_gap(0.36, 0.08, 1.0, 2.49);

    const Technology same = apply_scenario(tech, {0.0, 0.0});
    CHECK(same.a_f == tech.a_f);
    CHECK(same.a_c == tech.a_c);

    const Technology damaged = apply_scenario(tech, {0.25, 0.0});
    CHECK(damaged.gap == doctest::Approx(2.49 / 0.75).epsilon(1e-14));

    const Technology symmetric = apply_scenario(tech, {0.1, 0.1});
    CHECK(symmetric.gap == doctest::Approx(2.49).epsilon(1e-14));

    CHECK_THROWS_AS(apply_scenario(tech, {1.0, 0.0}), ParameterError);
}

TEST_CASE("factor prices from the capital-labor ratio") {
    const Technology tech(0.36, 0.08, 1.0, 1.0 / 2.49);
    const Prices at_one = prices_from_capital(tech, 1.0);
    CHECK(at_one.r == doctest::Approx(1.0 + 0.36 - 0.08).epsilon(1e-14));
    CHECK(at_one.w == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(at_one.p == doctest::Approx(2.49).epsilon(1e-14));

    // p has no k in it; w and the net return scale with TFP.
    const Prices at_five = prices_from_capital(tech, 5.0);
    CHECK(at_five.p == at_one.p);
    const Technology doubled(0.36, 0.08, 2.0, 2.0 / 2.49);
    const Prices scaled = prices_from_capital(doubled, 5.0);
    CHECK(scaled.w == doctest::Approx(2.0 * at_five.w).epsilon(1e-14));
    CHECK(scaled.r - 1.0 + 0.08 ==
          doctest::Approx(2.0 * (at_five.r - 1.0 + 0.08)).epsilon(1e-14));

    CHECK_THROWS_AS(prices_from_capital(tech, 0.0), ParameterError);
}

TEST_CASE("population-weighted damages") {
    CHECK(weighted_damage({{-0.3, 1.0}}) == doctest::Approx(-0.3));
    CHECK(weighted_damage({{-0.2, 0.3}, {-0.2, 0.5}}) == doctest::Approx(-0.2));
    CHECK_THROWS_AS(weighted_damage({{-0.2, 0.0}, {-0.3, 0.0}}), ParameterError);

    // The published regional table, shares as population fractions.
    const std::vector<std::pair<double, double>> rows{{-32.9, 0.282},
                                                      {-30.0, 0.128},
                                                      {-24.6, 0.047},
                                                      {-21.4, 0.294},
                                                      {-16.0, 0.254}};
    const double loss = weighted_damage(rows);
    CHECK(std::fabs(loss - (-24.6)) < 0.5);
}

TEST_CASE("regional damage CSV loader") {
    std::istringstream csv(
        "region,loss_baseline_pct,loss_optimistic_pct,loss_pessimistic_pct,"
        "population_share\n"
        "A,-30,-15,-45,0.6\n"
        "B,-10,-5,-20,0.4\n");
    const auto rows = load_regional_damages(csv);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].region == "A");
    CHECK(weighted_damage(rows, DamageColumn::baseline) == doctest::Approx(-22.0));
    CHECK(weighted_damage(rows, DamageColumn::optimistic) == doctest::Approx(-11.0));

    std::istringstream missing("region,loss_baseline_pct\nA,-30\n");
    CHECK_THROWS_AS(load_regional_damages(missing), IoError);
}

TEST_CASE("sector accounts split aggregates at a common capital-labor ratio") {
    const Technology tech = Technology::from_gap(0.36, 0.08, 1.0, 2.49);
    const double capital = 7.0, labor = 1.0;

    SUBCASE("no food demand puts everything in the non-food sector") {
        const SectorAccounts acc = sector_accounts(capital, labor, 1.0, 0.0, tech);
        CHECK(acc.l_f == 0.0);
        CHECK(acc.y_c ==
              doctest::Approx(tech.a_c * std::pow(7.0, 0.36)).epsilon(1e-14));
    }

    SUBCASE("symmetric TFP with food demand at half of output splits labor evenly") {
        const Technology sym = Technology::from_gap(0.36, 0.08, 1.0, 1.0);
        const double k_alpha = std::pow(capital / labor, 0.36);
        const SectorAccounts acc =
            sector_accounts(capital, labor, 0.0, 0.5 * k_alpha, sym);
        CHECK(acc.l_f == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(acc.y_c == doctest::Approx(acc.y_f).epsilon(1e-14));
    }

    SUBCASE("factor payments exhaust sector revenue") {
        const SectorAccounts acc = sector_accounts(capital, labor, 1.2, 0.1, tech);
        const Prices prices = prices_from_capital(tech, capital / labor);
        const double rental = prices.r - 1.0 + tech.delta;
        const double food_value = prices.p * acc.y_f;
        CHECK(prices.w * acc.l_f + rental * acc.k_f ==
              doctest::Approx(food_value).epsilon(1e-10));
        CHECK(prices.w * acc.l_c + rental * acc.k_c ==
              doctest::Approx(acc.y_c).epsilon(1e-10));
    }

    SUBCASE("infeasible food demand is rejected") {
        CHECK_THROWS_AS(sector_accounts(capital, labor, 0.0, 100.0, tech),
                        ParameterError);
    }
}
