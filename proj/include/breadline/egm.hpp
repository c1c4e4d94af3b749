#pragma once

#include <vector>

#include "breadline/demand.hpp"
#include "breadline/errors.hpp"
#include "breadline/income_process.hpp"
#include "breadline/production.hpp"

namespace breadline {

// Asset grid with the borrowing limit as its first node. Exponential
// spacing concentrates nodes near the limit, where the policy has the
// most curvature.
struct AssetGrid {
    std::vector<double> nodes;

    double lo() const { return nodes.front(); }
    double hi() const { return nodes.back(); }
    int size() const { return static_cast<int>(nodes.size()); }

    static AssetGrid exponential(double a_lo, double a_max, int size,
                                 double curvature = 6.0);

    bool operator==(const AssetGrid&) const = default;
};

enum class BorrowingMode { zero, natural };

// Borrowing limit for the household problem. Mode zero returns 0. Mode
// natural returns the subsistence-adjusted natural limit
//
//     a_n = (w * theta_min - p * f_bar) / (1 - r),
//
// negative for r > 1: the tightest debt repayable with certainty while
// covering subsistence food under the worst income path. Natural mode
// requires w * theta_min > p * f_bar; otherwise subsistence is
// unaffordable even debt-free and the model is infeasible.
double borrowing_limit(const Prices& prices, double theta_min,
                       BorrowingMode mode, double f_bar);

// Household decision rules on the grid, row-major over (asset node,
// shock state). expenditures is the primary object; savings is defined
// cell by cell as r*a + w*theta - expenditures, so the budget identity
// holds exactly as computed.
struct Policy {
    int n_assets = 0;
    int n_shocks = 0;
    std::vector<double> savings;
    std::vector<double> expenditures;
    int iterations = 0;
    double sup_diff = 0.0;

    double save(int i, int j) const { return savings[i * n_shocks + j]; }
    double spend(int i, int j) const { return expenditures[i * n_shocks + j]; }
};

// Solves the household Bellman equation by the endogenous grid method
// (Carroll 2006). The Euler equation in expenditure terms is
//
//     (y - p*f_bar)^(-eta) = beta * r * E[(y' - p*f_bar)^(-eta) | theta],
//
// with equality replaced by ">=" where the borrowing constraint binds.
// Iterates the time-iteration map on the expenditure policy until the
// sup-norm change falls below tol.
//
// Requires beta * r <= 1 (assets diverge beyond that; equality is
// admitted for the deterministic permanent-income limit) and a feasible
// grid: the lowest node must afford subsistence in the worst shock
// state.
Policy egm_solve(const Preferences& prefs, const Prices& prices,
                 const IncomeProcess& income, const AssetGrid& grid,
                 double tol = 1e-9, int max_iter = 20000,
                 const Policy* warm_start = nullptr);

// Relative Euler equation errors,
//
//     1 - (beta*r*E[(y'-p*f_bar)^(-eta)])^(-1/eta) / (y - p*f_bar),
//
// zero at interior optima, positive where the constraint binds. Next
// period expenditures are linearly interpolated at the policy's savings
// choice.
std::vector<double> euler_residuals(const Policy& policy,
                                    const Preferences& prefs,
                                    const Prices& prices,
                                    const IncomeProcess& income,
                                    const AssetGrid& grid);

// Piecewise-linear interpolation over a strictly increasing abscissa;
// extrapolates linearly beyond either end.
double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     double x);

}  // namespace breadline
