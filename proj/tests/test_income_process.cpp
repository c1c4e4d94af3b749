#include <cmath>

#include "doctest.h"

#include "breadline/income_process.hpp"
#include "support/oracles.hpp"

using namespace breadline;

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(discretize_ar1(1.0, 0.5, 7), ParameterError);
    CHECK_THROWS_AS(discretize_ar1(-0.1, 0.5, 7), ParameterError);
    CHECK_THROWS_AS(discretize_ar1(0.5, 0.0, 7), ParameterError);
    CHECK_THROWS_AS(discretize_ar1(0.5, 0.5, 1), ParameterError);
}

TEST_CASE("iid two-state chain is symmetric") {
    const IncomeProcess proc = discretize_ar1(0.0, 0.4, 2);
    CHECK(proc.prob(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(proc.prob(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(proc.prob(1, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(proc.stationary[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("chain invariants: rows, stationarity, unit mean, ordering") {
    for (int n : {2, 3, 7, 9}) {
        const IncomeProcess proc = discretize_ar1(0.23, 0.6, n);
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) {
                row += proc.prob(i, j);
                CHECK(proc.prob(i, j) >= 0.0);
            }
            CHECK(std::fabs(row - 1.0) <= 1e-12);
        }
        // Stationarity residual in sup norm.
        double residual = 0.0, mean = 0.0, total = 0.0;
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += proc.stationary[i] * proc.prob(i, j);
            residual = std::max(residual, std::fabs(acc - proc.stationary[j]));
            mean += proc.stationary[j] * proc.levels[j];
            total += proc.stationary[j];
            if (j > 0) CHECK(proc.levels[j] > proc.levels[j - 1]);
        }
        CHECK(residual < 1e-10);
        CHECK(std::fabs(total - 1.0) <= 1e-12);
        CHECK(std::fabs(mean - 1.0) <= 1e-10);
    }
}

TEST_CASE("simulated autocorrelation matches rho") {
    const IncomeProcess proc = discretize_ar1(0.23, 0.8, 7);
    const int length = 1000000;
    const std::vector<int> path = oracles::simulate_chain(proc, length, 991177);

    std::vector<double> logs(length);
    for (int t = 0; t < length; ++t) logs[t] = std::log(proc.levels[path[t]]);
    double mean = 0.0;
    for (double v : logs) mean += v;
    mean /= length;
    double cov = 0.0, var = 0.0;
    for (int t = 0; t + 1 < length; ++t) {
        cov += (logs[t] - mean) * (logs[t + 1] - mean);
        var += (logs[t] - mean) * (logs[t] - mean);
    }
    CHECK(cov / var == doctest::Approx(0.23).epsilon(0.05));
    CHECK(std::fabs(cov / var - 0.23) < 0.01);
}

TEST_CASE("simulated state frequencies converge to the stationary vector") {
    const IncomeProcess proc = discretize_ar1(0.23, 0.6, 5);
    const int length = 1000000;
    const std::vector<int> path = oracles::simulate_chain(proc, length, 5083);
    std::vector<double> freq(proc.n_states, 0.0);
    for (int state : path) freq[state] += 1.0 / length;
    for (int j = 0; j < proc.n_states; ++j)
        CHECK(freq[j] == doctest::Approx(proc.stationary[j]).epsilon(0.02));
}

TEST_CASE("stationary vector agrees with a dense eigen-solve") {
    const IncomeProcess proc = discretize_ar1(0.23, 0.6, 7);
    const int n = proc.n_states;
    // (P^t - I) pi = 0 with a normalization row, solved by elimination.
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    std::vector<double> b(n, 0.0);
    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col)
            a[row][col] = proc.prob(col, row) - (row == col ? 1.0 : 0.0);
    for (int col = 0; col < n; ++col) a[n - 1][col] = 1.0;
    b[n - 1] = 1.0;
    const std::vector<double> pi = oracles::solve_dense(a, b);
    for (int j = 0; j < n; ++j)
        CHECK(proc.stationary[j] == doctest::Approx(pi[j]).epsilon(1e-10));
}

TEST_CASE("stationary_distribution closed forms") {
    // Uniform rows: uniform fixed point; equal rows reproduce the row.
    const auto pi_half = stationary_distribution({0.5, 0.5, 0.5, 0.5}, 2);
    CHECK(pi_half[0] == doctest::Approx(0.5).epsilon(1e-12));
    const auto pi_u = stationary_distribution({0.25, 0.75, 0.25, 0.75}, 2);
    CHECK(pi_u[0] == doctest::Approx(0.25).epsilon(1e-12));

    // Two-state switch probabilities (a, b): pi = [b, a] / (a+b).
    const double a = 0.3, b = 0.12;
    const auto pi = stationary_distribution({1.0 - a, a, b, 1.0 - b}, 2);
    CHECK(pi[0] == doctest::Approx(b / (a + b)).epsilon(1e-11));
    CHECK(pi[1] == doctest::Approx(a / (a + b)).epsilon(1e-11));

    // Doubly stochastic: uniform.
    const auto pi_d = stationary_distribution(
        {0.5, 0.3, 0.2, 0.3, 0.4, 0.3, 0.2, 0.3, 0.5}, 3);
    for (int j = 0; j < 3; ++j)
        CHECK(pi_d[j] == doctest::Approx(1.0 / 3.0).epsilon(1e-11));

    CHECK_THROWS_AS(stationary_distribution({0.5, 0.4, 0.3, 0.7}, 2),
                    ParameterError);

    // Slow-mixing chain with a starved iteration budget.
    CHECK_THROWS_AS(
        stationary_distribution({0.999, 0.001, 0.01, 0.99}, 2, 1e-13, 3),
        ConvergenceError);
}

TEST_CASE("degenerate single-state chain is accepted") {
    const IncomeProcess proc = make_income_process({1.0}, {1.0});
    CHECK(proc.n_states == 1);
    CHECK(proc.levels[0] == doctest::Approx(1.0));
    CHECK(proc.stationary[0] == doctest::Approx(1.0));
}

TEST_CASE("equality detects identical processes") {
    const IncomeProcess a = discretize_ar1(0.23, 0.6, 7);
    const IncomeProcess b = discretize_ar1(0.23, 0.6, 7);
    const IncomeProcess c = discretize_ar1(0.23, 0.61, 7);
    CHECK(a == b);
    CHECK_FALSE(a == c);
}
