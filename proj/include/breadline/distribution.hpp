#pragma once

#include <vector>

#include "breadline/egm.hpp"

namespace breadline {

// Joint stationary distribution of assets and productivity on the grid,
// row-major over (asset node, shock state). Total mass is one.
struct StationaryDistribution {
    int n_assets = 0;
    int n_shocks = 0;
    std::vector<double> mass;
    int iterations = 0;
    double sup_diff = 0.0;

    double at(int i, int j) const { return mass[i * n_shocks + j]; }
};

// One application of the distribution transition implied by the policy:
// each cell's mass moves to its savings choice, split linearly between
// the two bracketing grid nodes (Young 2010), then mixed across shock
// states by the Markov chain. Mass is conserved.
std::vector<double> transition_operator(const Policy& policy,
                                        const IncomeProcess& income,
                                        const AssetGrid& grid,
                                        const std::vector<double>& mass_in);

// Fixed point of transition_operator to sup-norm tol, started from the
// product of the shock chain's stationary vector and a point mass at the
// lowest node (or from warm_start when given).
StationaryDistribution stationary(const Policy& policy,
                                  const IncomeProcess& income,
                                  const AssetGrid& grid, double tol = 1e-12,
                                  int max_iter = 2000000,
                                  const StationaryDistribution* warm_start = nullptr);

// Distribution-weighted aggregates. Labor equals one up to rounding by
// the unit-mean normalization of productivity.
struct Aggregates {
    double capital = 0.0;       // K = sum x * a
    double labor = 0.0;         // L = sum x * theta
    double consumption = 0.0;   // non-food, numeraire units
    double food = 0.0;          // food units
    double expenditures = 0.0;  // sum x * y_exp
    double mean_food_share = 0.0;
    double top_node_mass = 0.0;
    std::vector<double> expenditure_deciles;  // 9 interior cutoffs
};

Aggregates aggregate(const StationaryDistribution& dist, const AssetGrid& grid,
                     const IncomeProcess& income, const Policy& policy,
                     const Preferences& prefs, const Prices& prices);

}  // namespace breadline
