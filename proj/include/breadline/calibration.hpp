#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "breadline/equilibrium.hpp"

namespace breadline {

// One consumption segment of the expenditure survey aggregates: bounds
// are per-capita daily expenditures in currency units, the weight is a
// population share.
struct ExpenditureSegment {
    std::string label;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double mean_expenditure = 0.0;
    double food_share = 0.0;
    double weight = 0.0;
};

// CSV with header: label,lower_bound,upper_bound,mean_expenditure,
// food_share,population_weight.
std::vector<ExpenditureSegment> load_segments(std::istream& in);
std::vector<ExpenditureSegment> load_segments_file(const std::string& path);

struct PreferenceFit {
    double phi = 0.0;
    double f_bar = 0.0;  // in model units
    double intercept = 0.0;
    double slope = 0.0;
    double se_intercept = 0.0;
    double se_slope = 0.0;
    double r_squared = 0.0;
    int n_segments = 0;
    double mean_expenditure = 0.0;  // conversion factor used
};

// Least squares of the food share on the inverse of expenditures,
//
//     share_i = (1 - phi) + p_data * phi * f_bar_data / y_i,
//
// population-weighted by default. phi = 1 - intercept; the subsistence
// level slope / (p_data * phi) is converted to model units by dividing
// by mean_expenditure (pass 0 to use the weighted mean of the data).
PreferenceFit estimate_preferences(const std::vector<ExpenditureSegment>& data,
                                   double p_data = 1.0,
                                   double mean_expenditure = 0.0,
                                   bool weighted = true);

struct CalibrationPoint {
    double sigma = 0.0;
    double ratio = 0.0;   // achieved expenditure 80-20 ratio
    bool solved = false;
    std::string note;
};

struct CalibrationResult {
    double sigma = 0.0;
    double achieved_ratio = 0.0;
    double target_ratio = 0.0;
    std::vector<CalibrationPoint> trace;
};

// Pins the income-shock spread: root-find over sigma so that the
// no-damage steady state's expenditure 80-20 ratio hits the target
// within rel_tol. The achieved ratio is increasing in sigma over the
// bracket; evaluations that fail (infeasible subsistence, bracket
// failure at wide spreads) truncate the bracket from above. Throws
// BracketError with the achieved range when the target is unreachable.
CalibrationResult calibrate_spread(
    double target_8020, double rho, int n_states,
    const std::function<double(const IncomeProcess&)>& model_ratio,
    double sigma_lo = 0.05, double sigma_hi = 3.0, double rel_tol = 0.005,
    int max_iter = 60);

}  // namespace breadline
