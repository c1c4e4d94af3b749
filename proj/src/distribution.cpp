#include "breadline/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "breadline/stats.hpp"

namespace breadline {

namespace {

struct Lottery {
    std::vector<int> lower;      // lower bracketing node per cell
    std::vector<double> weight;  // share assigned to the lower node
};

Lottery build_lottery(const Policy& policy, const AssetGrid& grid) {
    const int m = policy.n_assets;
    const int n = policy.n_shocks;
    const double span = grid.hi() - grid.lo();
    const double slop = 1e-12 * std::max(1.0, span);

    Lottery lot;
    lot.lower.resize(m * n);
    lot.weight.resize(m * n);
    for (int c = 0; c < m * n; ++c) {
        double a = policy.savings[c];
        if (a < grid.lo() - slop || a > grid.hi() + slop)
            throw Error("policy saves outside the asset grid; the grid is "
                        "misconfigured for these prices");
        a = std::clamp(a, grid.lo(), grid.hi());
        const auto it =
            std::upper_bound(grid.nodes.begin(), grid.nodes.end(), a);
        int hi = static_cast<int>(it - grid.nodes.begin());
        if (hi == 0) hi = 1;
        if (hi == m) hi = m - 1;
        const int lo = hi - 1;
        const double w =
            (grid.nodes[hi] - a) / (grid.nodes[hi] - grid.nodes[lo]);
        lot.lower[c] = lo;
        lot.weight[c] = std::clamp(w, 0.0, 1.0);
    }
    return lot;
}

void apply(const Lottery& lot, const IncomeProcess& income, int m, int n,
           const std::vector<double>& in, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const int c = i * n + j;
            const double mass = in[c];
            if (mass == 0.0) continue;
            const int lo = lot.lower[c];
            const double to_lower = lot.weight[c] * mass;
            const double to_upper = mass - to_lower;
            for (int k = 0; k < n; ++k) {
                const double pjk = income.prob(j, k);
                out[lo * n + k] += to_lower * pjk;
                out[(lo + 1) * n + k] += to_upper * pjk;
            }
        }
    }
}

}  // namespace

std::vector<double> transition_operator(const Policy& policy,
                                        const IncomeProcess& income,
                                        const AssetGrid& grid,
                                        const std::vector<double>& mass_in) {
    const int m = policy.n_assets;
    const int n = policy.n_shocks;
    if (m != grid.size() || n != income.n_states)
        throw MismatchError("policy does not match grid/income dimensions");
    if (static_cast<int>(mass_in.size()) != m * n)
        throw MismatchError("distribution size does not match the policy");
    const Lottery lot = build_lottery(policy, grid);
    std::vector<double> out(m * n);
    apply(lot, income, m, n, mass_in, out);
    return out;
}

StationaryDistribution stationary(const Policy& policy,
                                  const IncomeProcess& income,
                                  const AssetGrid& grid, double tol,
                                  int max_iter,
                                  const StationaryDistribution* warm_start) {
    const int m = policy.n_assets;
    const int n = policy.n_shocks;
    if (m != grid.size() || n != income.n_states)
        throw MismatchError("policy does not match grid/income dimensions");

    const Lottery lot = build_lottery(policy, grid);

    std::vector<double> mass(m * n, 0.0);
    if (warm_start && warm_start->n_assets == m && warm_start->n_shocks == n) {
        mass = warm_start->mass;
    } else {
        for (int j = 0; j < n; ++j) mass[j] = income.stationary[j];
    }

    std::vector<double> next(m * n);
    int iter = 0;
    double diff = 0.0;
    for (iter = 1; iter <= max_iter; ++iter) {
        apply(lot, income, m, n, mass, next);
        // Renormalize so rounding drift cannot accumulate over long runs.
        double total = std::accumulate(next.begin(), next.end(), 0.0);
        for (double& v : next) v /= total;
        diff = 0.0;
        for (int c = 0; c < m * n; ++c)
            diff = std::max(diff, std::fabs(next[c] - mass[c]));
        mass.swap(next);
        if (diff < tol) break;
    }
    if (diff >= tol)
        throw ConvergenceError(
            "stationary distribution did not reach tol within " +
            std::to_string(max_iter) + " iterations (last change " +
            std::to_string(diff) + ")");

    StationaryDistribution dist;
    dist.n_assets = m;
    dist.n_shocks = n;
    dist.mass = std::move(mass);
    dist.iterations = iter;
    dist.sup_diff = diff;
    return dist;
}

Aggregates aggregate(const StationaryDistribution& dist, const AssetGrid& grid,
                     const IncomeProcess& income, const Policy& policy,
                     const Preferences& prefs, const Prices& prices) {
    const int m = dist.n_assets;
    const int n = dist.n_shocks;
    if (m != grid.size() || n != income.n_states || m != policy.n_assets ||
        n != policy.n_shocks)
        throw MismatchError("distribution does not match grid/income/policy");

    Aggregates agg;
    std::vector<double> cell_mass(m * n);
    std::vector<double> cell_exp(m * n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const int c = i * n + j;
            const double x = dist.mass[c];
            const double y = policy.spend(i, j);
            const ConsumptionBundle b = demand(prefs, prices.p, y);
            agg.capital += x * grid.nodes[i];
            agg.labor += x * income.levels[j];
            agg.consumption += x * b.c;
            agg.food += x * b.f;
            agg.expenditures += x * y;
            agg.mean_food_share += x * (prices.p * b.f / y);
            cell_mass[c] = x;
            cell_exp[c] = y;
        }
    }
    for (int j = 0; j < n; ++j) agg.top_node_mass += dist.at(m - 1, j);

    agg.expenditure_deciles.resize(9);
    for (int q = 1; q <= 9; ++q)
        agg.expenditure_deciles[q - 1] =
            weighted_quantile(cell_exp, cell_mass, q / 10.0);
    return agg;
}

}  // namespace breadline
