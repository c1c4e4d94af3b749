#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "breadline/errors.hpp"

namespace breadline {

// Two-sector Cobb-Douglas technology Y_j = A_j K_j^alpha L_j^(1-alpha),
// j in {c = non-food, f = food}, with a common capital share. The only
// difference between sectors is total factor productivity; its ratio
// a_c / a_f (the agricultural productivity gap) pins the food price.
struct Technology {
    double alpha;
    double delta;
    double a_c;
    double a_f;
    double gap;  // a_c / a_f, cached

    Technology(double alpha, double delta, double a_c, double a_f);

    // Convenience constructor from the gap: a_f = a_c / gap.
    static Technology from_gap(double alpha, double delta, double a_c,
                               double gap);

    bool operator==(const Technology&) const = default;
};

// Fractional TFP losses applied to each sector, both in [0,1).
struct ClimateScenario {
    double xi_f = 0.0;
    double xi_c = 0.0;

    bool operator==(const ClimateScenario&) const = default;
};

// r is the gross return entering the household budget theta*w + r*a,
// i.e. r = 1 + MPK - delta. p is the food price in numeraire units.
struct Prices {
    double r;
    double w;
    double p;
};

// Technology net of the climate shock: a_f scaled by (1 - xi_f), a_c by
// (1 - xi_c), gap recomputed.
Technology apply_scenario(const Technology& tech, const ClimateScenario& s);

// Factor prices at capital per efficiency unit of labor k:
//
//     r = 1 + a_c * alpha * k^(alpha-1) - delta
//     w = a_c * (1-alpha) * k^alpha
//     p = a_c / a_f                      (independent of k)
Prices prices_from_capital(const Technology& tech, double k);

// Population-weighted average of regional losses: sum(loss*share)/sum(share).
// Shares must be nonnegative with a positive sum; a residual share (sum
// below one) is ignored.
double weighted_damage(const std::vector<std::pair<double, double>>& loss_share);

// One row of the regional damage table (losses in percent, share as a
// fraction of population).
struct RegionalDamage {
    std::string region;
    double loss_baseline_pct;
    double loss_optimistic_pct;
    double loss_pessimistic_pct;
    double population_share;
};

// CSV with header: region,loss_baseline_pct,loss_optimistic_pct,
// loss_pessimistic_pct,population_share.
std::vector<RegionalDamage> load_regional_damages(std::istream& in);
std::vector<RegionalDamage> load_regional_damages_file(const std::string& path);

enum class DamageColumn { baseline, optimistic, pessimistic };

double weighted_damage(const std::vector<RegionalDamage>& rows, DamageColumn col);

// Sectoral allocation of aggregate capital, labor and output implied by
// market clearing when both sectors operate at the common capital-labor
// ratio k = K/L. Output is valued in each sector's own units; the food
// market clears by construction (y_f = food demand), the goods-market
// residual y_c - (c_agg + delta*K) is reported for Walras checks.
struct SectorAccounts {
    double y_f;
    double y_c;
    double l_f;
    double l_c;
    double k_f;
    double k_c;
    double goods_residual;
};

SectorAccounts sector_accounts(double capital, double labor, double c_agg,
                               double f_agg, const Technology& tech);

}  // namespace breadline
