#include "breadline/income_process.hpp"

#include <cmath>
#include <string>

namespace breadline {

namespace {

void require_stochastic(const std::vector<double>& transition, int n) {
    if (n < 1 || static_cast<int>(transition.size()) != n * n)
        throw ParameterError("transition matrix size does not match state count");
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p = transition[i * n + j];
            if (!(p >= 0.0) || !std::isfinite(p))
                throw ParameterError("transition probabilities must be nonnegative");
            row_sum += p;
        }
        if (std::fabs(row_sum - 1.0) > 1e-9)
            throw ParameterError("transition row " + std::to_string(i) +
                                 " sums to " + std::to_string(row_sum));
    }
}

}  // namespace

std::vector<double> stationary_distribution(const std::vector<double>& transition,
                                            int n, double tol, int max_iter) {
    require_stochastic(transition, n);
    std::vector<double> pi(n, 1.0 / n);
    std::vector<double> next(n);
    for (int iter = 0; iter < max_iter; ++iter) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += pi[i] * transition[i * n + j];
            next[j] = acc;
        }
        double total = 0.0;
        for (int j = 0; j < n; ++j) total += next[j];
        for (int j = 0; j < n; ++j) next[j] /= total;
        double diff = 0.0;
        for (int j = 0; j < n; ++j)
            diff = std::max(diff, std::fabs(next[j] - pi[j]));
        pi.swap(next);
        if (diff < tol) return pi;
    }
    throw ConvergenceError("stationary distribution did not converge in " +
                           std::to_string(max_iter) + " iterations");
}

IncomeProcess make_income_process(std::vector<double> levels,
                                  std::vector<double> transition) {
    const int n = static_cast<int>(levels.size());
    require_stochastic(transition, n);
    for (int i = 0; i < n; ++i) {
        if (!(levels[i] > 0.0))
            throw ParameterError("productivity levels must be positive");
        if (i > 0 && !(levels[i] > levels[i - 1]))
            throw ParameterError("productivity levels must be strictly increasing");
    }

    // Force exact row sums so that repeated applications of the operator
    // conserve probability mass.
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) row_sum += transition[i * n + j];
        for (int j = 0; j < n; ++j) transition[i * n + j] /= row_sum;
    }

    IncomeProcess proc;
    proc.n_states = n;
    proc.transition = std::move(transition);
    proc.stationary = stationary_distribution(proc.transition, n);

    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += proc.stationary[i] * levels[i];
    for (int i = 0; i < n; ++i) levels[i] /= mean;
    proc.levels = std::move(levels);
    return proc;
}

IncomeProcess discretize_ar1(double rho, double sigma, int n_states) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw ParameterError("persistence rho must lie in [0,1)");
    if (!(sigma > 0.0))
        throw ParameterError("innovation spread sigma must be positive");
    if (n_states < 2)
        throw ParameterError("discretization needs at least 2 states");

    const int n = n_states;
    const double p = (1.0 + rho) / 2.0;

    // Recursive Rouwenhorst construction, p = q for a symmetric process.
    std::vector<double> cur = {p, 1.0 - p, 1.0 - p, p};
    for (int m = 3; m <= n; ++m) {
        std::vector<double> next(m * m, 0.0);
        const int prev = m - 1;
        auto add = [&](int row_off, int col_off, double weight) {
            for (int i = 0; i < prev; ++i)
                for (int j = 0; j < prev; ++j)
                    next[(i + row_off) * m + (j + col_off)] +=
                        weight * cur[i * prev + j];
        };
        add(0, 0, p);
        add(0, 1, 1.0 - p);
        add(1, 0, 1.0 - p);
        add(1, 1, p);
        for (int i = 1; i < m - 1; ++i)
            for (int j = 0; j < m; ++j)
                next[i * m + j] /= 2.0;
        cur = std::move(next);
    }

    const double sigma_level = sigma / std::sqrt(1.0 - rho * rho);
    const double half_width = sigma_level * std::sqrt(n - 1.0);
    std::vector<double> levels(n);
    for (int i = 0; i < n; ++i) {
        const double log_level =
            -half_width + 2.0 * half_width * i / (n - 1.0);
        levels[i] = std::exp(log_level);
    }

    return make_income_process(std::move(levels), std::move(cur));
}

}  // namespace breadline
