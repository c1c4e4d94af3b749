#pragma once

#include <array>

namespace breadline {

// One expenditure decile of the comparison between two steady states.
// Deciles are tracked by expenditure rank within each state; CEVs are
// expressed as fractions of the decile's base-state mean expenditures.
struct DecileRow {
    int decile = 0;  // 1 (poorest) .. 10 (richest)
    double mean_exp_base = 0.0;
    double mean_exp_alt = 0.0;
    // Alternative-state mean expenditures of the base state's decile
    // population (same cells, other policy); the CEV comparison uses it.
    double mean_exp_alt_fixed = 0.0;
    double food_share_base = 0.0;
    double cev_pe = 0.0;
    double cev_ge = 0.0;
    double welfare_gap = 0.0;  // cev_pe - cev_ge
    // Income change split: labor term plus the two capital terms
    // a_base*(r_alt - r_base) and r_alt*(a_alt - a_base); the three sum
    // to total_income_delta identically.
    double labor_delta = 0.0;
    double capital_return_delta = 0.0;
    double capital_saving_delta = 0.0;
    double total_income_delta = 0.0;
    bool infeasible_at_pe = false;
};

// Differences between two steady states sharing all primitives except
// the climate scenario. Output changes are fractions of the base level;
// ratio and share changes are level differences.
struct ComparisonReport {
    double r_base = 0.0, r_alt = 0.0;
    double w_base = 0.0, w_alt = 0.0;
    double p_base = 0.0, p_alt = 0.0;

    double dy_f_pct = 0.0;
    double dy_c_pct = 0.0;
    double dk_pct = 0.0;

    double food_8020_base = 0.0, food_8020_alt = 0.0, d_food_8020 = 0.0;
    double exp_8020_base = 0.0, exp_8020_alt = 0.0, d_exp_8020 = 0.0;
    double mean_food_share_base = 0.0, mean_food_share_alt = 0.0,
           d_mean_food_share = 0.0;
    double wealth_gini_base = 0.0, wealth_gini_alt = 0.0, d_wealth_gini = 0.0;
    double wealthless_base = 0.0, wealthless_alt = 0.0, d_wealthless = 0.0;

    std::array<DecileRow, 10> deciles{};
};

}  // namespace breadline
