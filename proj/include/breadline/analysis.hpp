#pragma once

#include <array>
#include <vector>

#include "breadline/equilibrium.hpp"
#include "breadline/report.hpp"
#include "breadline/stats.hpp"

namespace breadline {

struct GiniResult {
    double value = 0.0;
    // Set when the support included negative assets (natural borrowing
    // limit) and the Lorenz curve was computed on the shifted support.
    bool shifted = false;
};

// Gini coefficient of asset holdings. Negative holdings (natural
// borrowing limit) are shifted to a nonnegative support and flagged.
GiniResult wealth_gini(const StationaryDistribution& dist, const AssetGrid& grid);

// Mass holding assets at or below the threshold. With the default zero
// borrowing limit this is exactly the mass at the bottom grid node.
double wealthless_share(const StationaryDistribution& dist, const AssetGrid& grid,
                        double threshold = 0.0);

// 80-20 ratios: mean of the top quintile over mean of the bottom
// quintile, by total expenditures and by food expenditures p*f.
double expenditure_ratio_8020(const SteadyState& state);
double food_expenditure_ratio_8020(const SteadyState& state);

// Mass-weighted means over the ten expenditure-ranked population bins.
struct DecileStats {
    double mean_expenditure = 0.0;
    double mean_assets = 0.0;
    double mean_theta = 0.0;
    double mean_food_share = 0.0;
    double min_expenditure = 0.0;
    // Mean of a counterfactual policy's expenditures over the same cells.
    double mean_expenditure_cf = 0.0;
};

std::array<DecileStats, 10> expenditure_decile_stats(const SteadyState& state);

// Per-decile welfare and income-change table between two steady states
// with identical primitives. CEVs are fractions of the decile's
// base-state mean expenditures; the income split satisfies
//
//     total = labor_delta + a_base*(r_alt-r_base) + r_alt*(a_alt-a_base)
//
// identically.
std::array<DecileRow, 10> welfare_decomposition(const SteadyState& base,
                                                const SteadyState& alt);

// Direct (partial-equilibrium) incidence of a food price change with
// expenditures frozen at the base state: per-decile changes in non-food
// consumption, food and food share, and the equivalent variation as a
// fraction of expenditures. Deciles holding any household that cannot
// afford subsistence at the new price are flagged, not dropped.
struct PeDecileRow {
    int decile = 0;
    double mean_expenditure = 0.0;
    double dc = 0.0;
    double df = 0.0;
    double d_food_share = 0.0;
    double cev_pe = 0.0;
    bool infeasible = false;
};

std::array<PeDecileRow, 10> pe_incidence(const SteadyState& base, double p_new);

// First-order welfare approximation from the initial food share:
// -share * (dp/p0), as a fraction of expenditures.
double engel_approximation(double food_share0, double dp_relative);

// Food and non-food expenditure shares along the expenditure
// distribution, one row per percentile of the base state, expenditures
// normalized by the base-state mean.
struct SharePoint {
    double normalized_expenditure = 0.0;
    double food_share_base = 0.0;
    double food_share_alt = 0.0;
};

std::vector<SharePoint> food_share_curve(const SteadyState& base,
                                         const SteadyState& alt,
                                         int n_points = 99);

}  // namespace breadline
