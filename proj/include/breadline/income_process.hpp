#pragma once

#include <vector>

#include "breadline/errors.hpp"

namespace breadline {

// Discretized idiosyncratic labor-productivity process: an N-state Markov
// chain with strictly increasing levels, a row-stochastic transition
// matrix (flat, row-major) and its stationary distribution. Levels are
// normalized so that the stationary mean of productivity equals 1.
struct IncomeProcess {
    int n_states = 0;
    std::vector<double> levels;      // theta_1 < ... < theta_N, all > 0
    std::vector<double> transition;  // n_states x n_states, row-major
    std::vector<double> stationary;  // left eigenvector for eigenvalue 1

    double prob(int from, int to) const { return transition[from * n_states + to]; }

    bool operator==(const IncomeProcess&) const = default;
};

// Stationary distribution of a row-stochastic matrix, found by iterating
// pi' = pi * P from the uniform vector until the sup-norm change falls
// below tol. Throws ParameterError on non-stochastic input and
// ConvergenceError when the iteration budget runs out.
std::vector<double> stationary_distribution(const std::vector<double>& transition,
                                            int n, double tol = 1e-13,
                                            int max_iter = 1000000);

// Validates levels/transition, computes the stationary vector and
// normalizes levels to unit stationary mean. Accepts n = 1 (degenerate
// chain), which discretize_ar1 does not produce.
IncomeProcess make_income_process(std::vector<double> levels,
                                  std::vector<double> transition);

// Rouwenhorst (1995) discretization of the AR(1) log-productivity process
//
//     log theta' = rho * log theta + e,   e ~ N(0, sigma^2).
//
// The chain's first-order autocorrelation equals rho exactly and the
// unconditional log spread matches sigma / sqrt(1 - rho^2). Chosen over
// Tauchen for its exact persistence at low state counts.
IncomeProcess discretize_ar1(double rho, double sigma, int n_states);

}  // namespace breadline
