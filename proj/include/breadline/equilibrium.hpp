#pragma once

#include <string>
#include <utility>
#include <vector>

#include "breadline/distribution.hpp"
#include "breadline/egm.hpp"
#include "breadline/report.hpp"

#include "json.hpp"

namespace breadline {

struct GridConfig {
    int size = 200;
    double a_max = 0.0;  // 0 = auto: 60 x mean labor income at the top bracket rate
    double curvature = 6.0;
    BorrowingMode mode = BorrowingMode::zero;

    bool operator==(const GridConfig&) const = default;
};

struct SolverConfig {
    double egm_tol = 1e-9;
    int egm_max_iter = 50000;
    double dist_tol = 1e-12;
    int dist_max_iter = 2000000;
    double clearing_tol = 1e-6;
    int bisect_max_iter = 200;
    double top_mass_limit = 1e-6;
    int max_grid_doublings = 4;

    bool operator==(const SolverConfig&) const = default;
};

struct Diagnostics {
    double euler_max = 0.0;           // over unconstrained cells
    double clearing_residual = 0.0;   // |K_hh - K_firm| / K_firm
    double walras_residual = 0.0;     // |Y_c - C - delta*K| / Y_c
    double top_node_mass = 0.0;
    int bisect_iterations = 0;
    int grid_doublings = 0;
    // Bracketing certificate: excess capital supply changes sign over the
    // final bracket around the returned rate.
    double rate_lo = 0.0, rate_hi = 0.0;
    double excess_lo = 0.0, excess_hi = 0.0;
    // Every (net rate, excess supply) evaluation of the final bisection,
    // in evaluation order; excess supply is increasing in the rate up to
    // histogram granularity.
    std::vector<std::pair<double, double>> excess_trace;
};

// A solved stationary recursive competitive equilibrium.
struct SteadyState {
    Preferences prefs;
    Technology tech;  // technology net of the climate shock
    ClimateScenario scenario;
    IncomeProcess income;
    AssetGrid grid;
    Prices prices;
    Policy policy;
    StationaryDistribution dist;
    Aggregates agg;
    SectorAccounts sectors;
    Diagnostics diag;
};

// Finds the market-clearing interest rate by bisection over the net rate
// on (-delta, 1/beta - 1). Each iterate maps the rate to factor prices,
// solves the household problem, iterates the distribution to its fixed
// point and compares household capital supply with firm demand. The food
// price is a_c / a_f throughout, independent of the fixed point.
//
// The asset grid is shared across iterates (zero borrowing mode) and its
// upper end is doubled and the solve repeated when stationary mass parks
// in the top node. Passing fixed_grid pins the grid instead, for
// comparisons that require identical grids across scenarios.
SteadyState solve_steady_state(const Preferences& prefs,
                               const Technology& base_tech,
                               const ClimateScenario& scenario,
                               const IncomeProcess& income,
                               const GridConfig& grid_config,
                               const SolverConfig& solver_config,
                               const AssetGrid* fixed_grid = nullptr);

// Differences between two steady states solved on identical primitives
// (preferences, income process, asset grid). Throws MismatchError
// otherwise.
ComparisonReport compare(const SteadyState& base, const SteadyState& alt);

// Full structured snapshot (scalars, grids, matrices row-major) for
// regression tests and downstream tooling.
nlohmann::json snapshot_json(const SteadyState& state);
void write_snapshot(const SteadyState& state, const std::string& path);

}  // namespace breadline
