#pragma once

#include <string>
#include <vector>

#include "breadline/config.hpp"

namespace breadline {

// Exit codes shared by the CLI and the error records written next to the
// outputs.
enum ExitCode {
    exit_ok = 0,
    exit_usage = 1,
    exit_config = 2,
    exit_solver = 3,
    exit_infeasible = 4,
    exit_io = 5,
};

// Solves one steady state; writes steady_state.json and summary.csv into
// the config's output directory. Returns exit_ok iff every diagnostic
// invariant holds.
int run_solve(const RunConfig& cfg);

// Solves the two scenarios on shared primitives and writes
// comparison.csv, deciles.csv, income_decomposition.csv,
// food_share_curve.csv and summary.csv (plus SVG renders when plotting
// is enabled). The configs must differ only in their scenario block.
int run_compare(const RunConfig& base_cfg, const RunConfig& alt_cfg);

// Damage-allocation sweep: for each loss size and each allocation
// (ag-only, symmetric, nonag-only) solves the damaged state and records
// inequality indicators relative to the shared no-damage base. Per-cell
// failures are recorded and the sweep continues.
int run_sweep(const RunConfig& cfg, const std::vector<double>& losses,
              const std::vector<std::string>& allocations);

// Fits preferences from an expenditure-segment CSV (when given) and pins
// the income spread to the configured 80-20 target; writes
// calibration_report.csv and calibration_report.txt.
int run_calibrate(const std::string& segments_path, const RunConfig& cfg);

// Helpers shared with the test suites.
AssetGrid comparison_grid(const RunConfig& cfg, int doublings = 0);
SteadyState solve_from_config(const RunConfig& cfg, const AssetGrid* grid = nullptr);
ClimateScenario allocation_scenario(const std::string& allocation, double loss,
                                    double nonfood_output_share);

// Solves every scenario on one shared grid, doubling its upper end and
// re-solving the whole set when stationary mass parks in the top node.
std::vector<SteadyState> solve_on_shared_grid(
    const RunConfig& model_cfg, const std::vector<ClimateScenario>& scenarios);

}  // namespace breadline
