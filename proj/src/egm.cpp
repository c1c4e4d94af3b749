#include "breadline/egm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace breadline {

AssetGrid AssetGrid::exponential(double a_lo, double a_max, int size,
                                 double curvature) {
    if (size < 2) throw ParameterError("asset grid needs at least 2 nodes");
    if (!(a_max > a_lo)) throw ParameterError("a_max must exceed the borrowing limit");
    if (!(curvature > 0.0)) throw ParameterError("grid curvature must be positive");
    AssetGrid grid;
    grid.nodes.resize(size);
    const double denom = std::expm1(curvature);
    for (int i = 0; i < size; ++i) {
        const double t = std::expm1(curvature * i / (size - 1.0)) / denom;
        grid.nodes[i] = a_lo + (a_max - a_lo) * t;
    }
    grid.nodes.front() = a_lo;
    grid.nodes.back() = a_max;
    return grid;
}

double borrowing_limit(const Prices& prices, double theta_min,
                       BorrowingMode mode, double f_bar) {
    if (mode == BorrowingMode::zero) return 0.0;
    const double worst_income = prices.w * theta_min;
    const double subsistence_cost = prices.p * f_bar;
    if (!(worst_income > subsistence_cost))
        throw SubsistenceError(
            "natural borrowing limit undefined: worst-case labor income " +
            std::to_string(worst_income) + " cannot cover subsistence cost " +
            std::to_string(subsistence_cost));
    if (prices.r == 1.0)
        throw ParameterError("natural borrowing limit undefined at r = 1");
    return (worst_income - subsistence_cost) / (1.0 - prices.r);
}

double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     double x) {
    const size_t n = xs.size();
    if (x <= xs.front()) {
        const double slope = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        return ys[0] + slope * (x - xs[0]);
    }
    if (x >= xs.back()) {
        const double slope = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
        return ys[n - 1] + slope * (x - xs[n - 1]);
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t hi = static_cast<size_t>(it - xs.begin());
    const size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

namespace {

struct MarginalUtility {
    double eta;
    bool quadratic;  // eta == 2 fast path

    explicit MarginalUtility(double eta_) : eta(eta_), quadratic(eta_ == 2.0) {}

    double mu(double slack) const {
        return quadratic ? 1.0 / (slack * slack) : std::pow(slack, -eta);
    }
    double dmu(double slack) const {
        return quadratic ? -2.0 / (slack * slack * slack)
                         : -eta * std::pow(slack, -eta - 1.0);
    }
    double inv(double value) const {
        return quadratic ? 1.0 / std::sqrt(value) : std::pow(value, -1.0 / eta);
    }
};

}  // namespace

Policy egm_solve(const Preferences& prefs, const Prices& prices,
                 const IncomeProcess& income, const AssetGrid& grid,
                 double tol, int max_iter, const Policy* warm_start) {
    const int m = grid.size();
    const int n = income.n_states;
    const double r = prices.r;
    const double w = prices.w;
    const double subsistence = prices.p * prefs.f_bar;

    if (prefs.beta * r > 1.0 + 1e-12)
        throw ParameterError("beta * r exceeds 1: household assets diverge");

    // Cash on hand per cell; fixed expression so the budget identity is
    // reproducible bit for bit.
    std::vector<double> cash(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            cash[i * n + j] = r * grid.nodes[i] + w * income.levels[j];

    // Worst corner: zero saving out of the lowest node under the lowest
    // shock must still afford subsistence strictly.
    if (!(cash[0] - grid.lo() > subsistence))
        throw SubsistenceError(
            "infeasible grid: the lowest asset node cannot afford subsistence "
            "in the worst shock state");

    std::vector<double> y(m * n);
    bool warm_ok = warm_start && warm_start->n_assets == m &&
                   warm_start->n_shocks == n;
    if (warm_ok)
        for (int c = 0; c < m * n; ++c)
            if (!(warm_start->expenditures[c] > subsistence)) warm_ok = false;
    if (warm_ok) {
        y = warm_start->expenditures;
    } else {
        // Feasible initial guess: spend half of the resources available
        // above subsistence and the borrowing limit.
        for (int c = 0; c < m * n; ++c)
            y[c] = subsistence + 0.5 * (cash[c] - grid.lo() - subsistence);
    }

    const MarginalUtility util(prefs.eta);
    std::vector<double> emu(m * n);
    std::vector<double> y_endo(m * n);
    std::vector<double> a_endo(m * n);
    std::vector<double> y_next(m * n);
    std::vector<double> col_a(m), col_y(m);

    int iter = 0;
    double diff = 0.0;
    for (iter = 1; iter <= max_iter; ++iter) {
        // Expected marginal utility over theta' for each saving node,
        // fixed summation order over k.
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k)
                    acc += income.prob(j, k) * util.mu(y[i * n + k] - subsistence);
                emu[i * n + j] = acc;
            }
        }

        // Invert the Euler equation: treating grid node i as next-period
        // assets, recover the endogenous current expenditure and asset.
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                const double slack = util.inv(prefs.beta * r * emu[i * n + j]);
                const double spend = slack + subsistence;
                y_endo[i * n + j] = spend;
                a_endo[i * n + j] =
                    (spend + grid.nodes[i] - w * income.levels[j]) / r;
            }
        }

        // Map back to the exogenous grid. Below the lowest endogenous
        // node the borrowing constraint binds and all resources above the
        // limit are spent; above the highest one the household would save
        // past the grid, so the top cap binds.
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < m; ++i) {
                col_a[i] = a_endo[i * n + j];
                col_y[i] = y_endo[i * n + j];
                if (i > 0 && !(col_a[i] > col_a[i - 1]))
                    throw ConvergenceError(
                        "endogenous grid is not monotone; the household "
                        "problem is ill-posed at these prices");
            }
            for (int i = 0; i < m; ++i) {
                const double a = grid.nodes[i];
                double spend;
                if (a <= col_a[0]) {
                    spend = cash[i * n + j] - grid.lo();
                } else if (a >= col_a[m - 1]) {
                    spend = cash[i * n + j] - grid.hi();
                } else {
                    spend = interp_linear(col_a, col_y, a);
                    if (!(spend > subsistence))
                        throw SubsistenceError("interpolated expenditures fell "
                                               "below subsistence");
                }
                y_next[i * n + j] = spend;
            }
        }

        diff = 0.0;
        for (int c = 0; c < m * n; ++c)
            diff = std::max(diff, std::fabs(y_next[c] - y[c]));
        y.swap(y_next);
        if (diff < tol) break;
    }
    if (diff >= tol)
        throw ConvergenceError("EGM did not reach tol " + std::to_string(tol) +
                               " within " + std::to_string(max_iter) +
                               " iterations (last change " +
                               std::to_string(diff) + ")");

    // Polish phase: the EGM policy is exact at endogenous points but only
    // chord-accurate at grid nodes. Re-solve the Euler equation exactly at
    // every node against the interpolated continuation until the policy
    // settles, so the returned residuals at interior nodes sit at root
    // tolerance instead of O(h^2).
    std::vector<std::vector<double>> column(n, std::vector<double>(m));
    for (int sweep = 0; sweep < 500; ++sweep) {
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < m; ++i) column[k][i] = y[i * n + k];

        // beta*r*E[mu(y'(s) - subsistence)] and its derivative in s; one
        // shared position lookup serves all shock columns.
        auto continuation_mu = [&](double s, int j, double* deriv) {
            const auto it =
                std::upper_bound(grid.nodes.begin(), grid.nodes.end(), s);
            int hi_node = static_cast<int>(it - grid.nodes.begin());
            hi_node = std::clamp(hi_node, 1, m - 1);
            const int lo_node = hi_node - 1;
            const double width = grid.nodes[hi_node] - grid.nodes[lo_node];
            const double t = (s - grid.nodes[lo_node]) / width;
            double acc = 0.0, dacc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double y_lo = column[k][lo_node];
                const double y_hi = column[k][hi_node];
                const double slack = y_lo + t * (y_hi - y_lo) - subsistence;
                acc += income.prob(j, k) * util.mu(slack);
                if (deriv)
                    dacc += income.prob(j, k) * util.dmu(slack) *
                            ((y_hi - y_lo) / width);
            }
            if (deriv) *deriv = prefs.beta * r * dacc;
            return prefs.beta * r * acc;
        };

        double sweep_diff = 0.0;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                const int c = i * n + j;
                const double x = cash[c];
                const double y_top = x - grid.lo();   // bottom constraint binds
                const double y_floor = x - grid.hi();  // top cap binds
                double spend;
                if (y_floor > subsistence &&
                    util.mu(y_floor - subsistence) <=
                        continuation_mu(grid.hi(), j, nullptr)) {
                    spend = y_floor;
                } else if (util.mu(y_top - subsistence) >=
                           continuation_mu(grid.lo(), j, nullptr)) {
                    spend = y_top;
                } else {
                    // Safeguarded Newton on the strictly decreasing excess
                    // marginal utility mu(y - sub) - continuation(x - y).
                    double lo_y = std::max(
                        subsistence + 1e-14 * (1.0 + subsistence), y_floor);
                    double hi_y = y_top;
                    double cur = y[c];
                    if (!(cur > lo_y && cur < hi_y)) cur = 0.5 * (lo_y + hi_y);
                    for (int it = 0; it < 40; ++it) {
                        double dcont = 0.0;
                        const double cont = continuation_mu(x - cur, j, &dcont);
                        const double mu_cur = util.mu(cur - subsistence);
                        const double g = mu_cur - cont;
                        if (std::fabs(g) <= 1e-12 * mu_cur) break;
                        if (g > 0.0)
                            lo_y = cur;
                        else
                            hi_y = cur;
                        // dg/dy = mu'(y - sub) + dC/ds; both negative.
                        const double dg = util.dmu(cur - subsistence) + dcont;
                        double next = cur - g / dg;
                        if (!(next > lo_y && next < hi_y))
                            next = 0.5 * (lo_y + hi_y);
                        if (hi_y - lo_y < 1e-15 * (1.0 + hi_y)) break;
                        cur = next;
                    }
                    spend = cur;
                }
                sweep_diff = std::max(sweep_diff, std::fabs(spend - y[c]));
                y_next[c] = spend;
            }
        }
        y.swap(y_next);
        if (sweep_diff < tol) break;
    }

    Policy policy;
    policy.n_assets = m;
    policy.n_shocks = n;
    policy.expenditures = std::move(y);
    policy.savings.resize(m * n);
    for (int c = 0; c < m * n; ++c) {
        double save = cash[c] - policy.expenditures[c];
        if (save < grid.lo()) {
            save = grid.lo();
            policy.expenditures[c] = cash[c] - save;
        }
        policy.savings[c] = save;
    }
    policy.iterations = iter;
    policy.sup_diff = diff;
    return policy;
}

std::vector<double> euler_residuals(const Policy& policy,
                                    const Preferences& prefs,
                                    const Prices& prices,
                                    const IncomeProcess& income,
                                    const AssetGrid& grid) {
    const int m = policy.n_assets;
    const int n = policy.n_shocks;
    if (m != grid.size() || n != income.n_states)
        throw MismatchError("policy does not match grid/income dimensions");
    const double subsistence = prices.p * prefs.f_bar;
    const MarginalUtility util(prefs.eta);

    std::vector<double> residuals(m * n);
    std::vector<std::vector<double>> column(n, std::vector<double>(m));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < m; ++i) column[k][i] = policy.spend(i, k);

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const double save = policy.save(i, j);
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double y_next = interp_linear(grid.nodes, column[k], save);
                acc += income.prob(j, k) * util.mu(y_next - subsistence);
            }
            const double implied = util.inv(prefs.beta * prices.r * acc);
            residuals[i * n + j] =
                1.0 - implied / (policy.spend(i, j) - subsistence);
        }
    }
    return residuals;
}

}  // namespace breadline
