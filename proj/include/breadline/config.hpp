#pragma once

#include <cstdint>
#include <string>

#include "breadline/equilibrium.hpp"

#include "json.hpp"

namespace breadline {

// A full run description: preference, technology, income, grid, scenario
// and solver blocks, all with shipped defaults so an empty config file
// reproduces the standard experiment. Every block validates against its
// module's invariants before any solve starts.
struct RunConfig {
    // preferences
    double phi = 0.8196;
    double f_bar = 0.0564;
    double eta = 2.0;
    double beta = 0.975;
    // technology
    double alpha = 0.36;
    double delta = 0.08;
    double a_c = 1.0;
    double g_apg = 2.49;
    // income
    double rho = 0.23;
    double sigma = 0.55;
    int n_states = 7;
    // grid
    GridConfig grid;
    // scenario
    std::string scenario_name = "no-damage";
    ClimateScenario scenario;
    // solver
    SolverConfig solver;
    // output
    std::string output_dir = "out";
    bool plot = false;
    int workers = 1;
    std::uint64_t seed = 918273645;  // consumed only by sampling-based test oracles
    // calibration
    double target_8020 = 21.0;
    double sigma_lo = 0.05;
    double sigma_hi = 3.0;

    Preferences preferences() const { return {phi, f_bar, eta, beta}; }
    Technology technology() const {
        return Technology::from_gap(alpha, delta, a_c, g_apg);
    }
    IncomeProcess income() const { return discretize_ar1(rho, sigma, n_states); }

    // Everything that identifies the model instance (not the output
    // plumbing); two configs with equal model_json describe the same
    // economy up to the scenario.
    nlohmann::json model_json() const;
    nlohmann::json to_json() const;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);

    // FNV-1a over the canonical serialized config; stamped into every
    // emitted table.
    std::string hash() const;

    void validate() const;
};

// Scenario names from the damage table: no-damage, baseline (0.25),
// optimistic (0.11), pessimistic (0.40), all on the food sector.
ClimateScenario named_scenario(const std::string& name);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace breadline
