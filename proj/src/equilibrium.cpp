#include "breadline/equilibrium.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <string>

#include "breadline/analysis.hpp"

namespace breadline {

namespace {

double firm_capital_per_labor(const Technology& tech, double r_net) {
    return std::pow(tech.a_c * tech.alpha / (r_net + tech.delta),
                    1.0 / (1.0 - tech.alpha));
}

Prices prices_at_rate(const Technology& tech, double r_net) {
    Prices prices = prices_from_capital(tech, firm_capital_per_labor(tech, r_net));
    // Replace the recomputed rate with the exact iterate to keep the
    // bisection variable and the household problem consistent bit for bit.
    prices.r = 1.0 + r_net;
    return prices;
}

// Natural-mode grids start a hair inside the natural limit: exactly at
// the limit the worst-state household has zero slack and infinite
// marginal utility.
double natural_grid_floor(double a_natural) {
    return a_natural + 1e-4 * std::max(1.0, std::fabs(a_natural));
}

struct Iterate {
    Prices prices;
    AssetGrid grid;
    Policy policy;
    StationaryDistribution dist;
    Aggregates agg;
    double k_firm = 0.0;
    double excess = 0.0;  // household supply minus firm demand
};

struct Solver {
    const Preferences& prefs;
    const Technology& tech;
    const IncomeProcess& income;
    const GridConfig& gcfg;
    const SolverConfig& scfg;
    const AssetGrid* fixed_grid;
    double a_max;

    std::optional<Policy> warm_policy;
    std::optional<StationaryDistribution> warm_dist;
    std::vector<std::pair<double, double>> excess_trace;

    Iterate evaluate(double r_net) {
        Iterate it;
        it.prices = prices_at_rate(tech, r_net);
        it.k_firm = firm_capital_per_labor(tech, r_net);

        if (fixed_grid) {
            it.grid = *fixed_grid;
        } else if (gcfg.mode == BorrowingMode::zero) {
            it.grid = AssetGrid::exponential(0.0, a_max, gcfg.size, gcfg.curvature);
        } else {
            const double a_n = borrowing_limit(it.prices, income.levels.front(),
                                               BorrowingMode::natural, prefs.f_bar);
            it.grid = AssetGrid::exponential(natural_grid_floor(a_n), a_max,
                                             gcfg.size, gcfg.curvature);
        }

        it.policy = egm_solve(prefs, it.prices, income, it.grid, scfg.egm_tol,
                              scfg.egm_max_iter,
                              warm_policy ? &*warm_policy : nullptr);
        it.dist = stationary(it.policy, income, it.grid, scfg.dist_tol,
                             scfg.dist_max_iter,
                             warm_dist ? &*warm_dist : nullptr);
        it.agg = aggregate(it.dist, it.grid, income, it.policy, prefs, it.prices);
        it.excess = it.agg.capital - it.k_firm * it.agg.labor;
        excess_trace.emplace_back(r_net, it.excess);

        warm_policy = it.policy;
        warm_dist = it.dist;
        return it;
    }
};

double max_unconstrained_euler_residual(const Policy& policy,
                                        const Preferences& prefs,
                                        const Prices& prices,
                                        const IncomeProcess& income,
                                        const AssetGrid& grid) {
    const std::vector<double> res =
        euler_residuals(policy, prefs, prices, income, grid);
    // Interior cells only: both the borrowing limit and the grid's top
    // cap are binding constraints where the residual is one-sided.
    const double lo = grid.lo();
    const double hi = grid.hi();
    const double slop_lo = 1e-10 * std::max(1.0, std::fabs(lo));
    const double slop_hi = 1e-10 * std::max(1.0, hi);
    double worst = 0.0;
    for (int i = 0; i < policy.n_assets; ++i)
        for (int j = 0; j < policy.n_shocks; ++j) {
            const double save = policy.save(i, j);
            if (save > lo + slop_lo && save < hi - slop_hi)
                worst = std::max(worst, std::fabs(res[i * policy.n_shocks + j]));
        }
    return worst;
}

}  // namespace

SteadyState solve_steady_state(const Preferences& prefs,
                               const Technology& base_tech,
                               const ClimateScenario& scenario,
                               const IncomeProcess& income,
                               const GridConfig& grid_config,
                               const SolverConfig& solver_config,
                               const AssetGrid* fixed_grid) {
    const Technology tech = apply_scenario(base_tech, scenario);

    const double rate_hi = 1.0 / prefs.beta - 1.0 - 1e-5;
    // Candidate lower endpoints, tried left to right until excess supply
    // turns negative. Natural mode needs r > 1 for a finite limit.
    std::vector<double> lo_candidates;
    if (grid_config.mode == BorrowingMode::natural)
        lo_candidates = {0.005, 1e-3, 1e-4};
    else
        lo_candidates = {0.0, -base_tech.delta / 2.0, -base_tech.delta + 1e-3};

    double a_max = grid_config.a_max;
    if (!(a_max > 0.0)) {
        // 60 x mean labor income, evaluated at the top of the bracket.
        a_max = 60.0 * prices_at_rate(tech, rate_hi).w;
    }
    if (fixed_grid) a_max = fixed_grid->hi();

    for (int doubling = 0;; ++doubling) {
        Solver solver{prefs,      tech,  income, grid_config, solver_config,
                      fixed_grid, a_max, {},     {},          {}};

        Iterate hi_it = solver.evaluate(rate_hi);
        if (!(hi_it.excess > 0.0)) {
            // A binding grid cap depresses savings everywhere (the
            // continuation value of approaching it falls), so an
            // undersized grid can surface here rather than in the tail
            // check. The cap's signature is mass parked in the top node.
            if (hi_it.agg.top_node_mass > solver_config.top_mass_limit) {
                if (fixed_grid)
                    throw GridTailError(
                        "stationary mass accumulates at the top of the fixed "
                        "grid; enlarge it");
                if (doubling < solver_config.max_grid_doublings) {
                    a_max *= 2.0;
                    continue;
                }
            }
            throw BracketError("households supply less capital than firms "
                               "demand even at the patience bound");
        }

        double lo = 0.0;
        std::optional<Iterate> lo_it;
        for (double cand : lo_candidates) {
            if (!(cand < rate_hi)) continue;
            Iterate it = solver.evaluate(cand);
            lo = cand;
            if (it.excess < 0.0) {
                lo_it = std::move(it);
                break;
            }
        }
        if (!lo_it)
            throw BracketError("excess capital supply has no sign change over "
                               "the admissible rate interval");

        double hi = rate_hi;
        double excess_lo = lo_it->excess;
        double excess_hi = hi_it.excess;

        Iterate mid_it = std::move(*lo_it);
        int iter = 0;
        bool cleared = false;
        for (iter = 1; iter <= solver_config.bisect_max_iter; ++iter) {
            const double mid = 0.5 * (lo + hi);
            mid_it = solver.evaluate(mid);
            const double demand = mid_it.k_firm * mid_it.agg.labor;
            if (std::fabs(mid_it.excess) / demand < solver_config.clearing_tol) {
                cleared = true;
                break;
            }
            if (mid_it.excess < 0.0) {
                lo = mid;
                excess_lo = mid_it.excess;
            } else {
                hi = mid;
                excess_hi = mid_it.excess;
            }
            if (hi - lo < 1e-15)
                throw ConvergenceError(
                    "bisection bracket collapsed before the capital market "
                    "cleared; residual " + std::to_string(mid_it.excess));
        }
        if (!cleared)
            throw ConvergenceError("capital market did not clear within " +
                                   std::to_string(solver_config.bisect_max_iter) +
                                   " bisection steps");

        if (mid_it.agg.top_node_mass > solver_config.top_mass_limit) {
            if (fixed_grid)
                throw GridTailError(
                    "stationary mass accumulates at the top of the fixed "
                    "grid; enlarge it");
            if (doubling >= solver_config.max_grid_doublings)
                throw Error("asset grid upper end insufficient after " +
                            std::to_string(doubling) + " doublings");
            a_max *= 2.0;
            continue;
        }

        SteadyState state{prefs,
                          tech,
                          scenario,
                          income,
                          std::move(mid_it.grid),
                          mid_it.prices,
                          std::move(mid_it.policy),
                          std::move(mid_it.dist),
                          std::move(mid_it.agg),
                          {},
                          {}};
        state.sectors = sector_accounts(state.agg.capital, state.agg.labor,
                                        state.agg.consumption, state.agg.food,
                                        tech);
        state.diag.euler_max = max_unconstrained_euler_residual(
            state.policy, prefs, state.prices, income, state.grid);
        state.diag.clearing_residual =
            std::fabs(state.agg.capital -
                      firm_capital_per_labor(tech, state.prices.r - 1.0) *
                          state.agg.labor) /
            (firm_capital_per_labor(tech, state.prices.r - 1.0) * state.agg.labor);
        state.diag.walras_residual =
            std::fabs(state.sectors.goods_residual) / state.sectors.y_c;
        state.diag.top_node_mass = state.agg.top_node_mass;
        state.diag.bisect_iterations = iter;
        state.diag.grid_doublings = doubling;
        state.diag.rate_lo = lo;
        state.diag.rate_hi = hi;
        state.diag.excess_lo = excess_lo;
        state.diag.excess_hi = excess_hi;
        state.diag.excess_trace = std::move(solver.excess_trace);
        return state;
    }
}

ComparisonReport compare(const SteadyState& base, const SteadyState& alt) {
    if (!(base.prefs == alt.prefs))
        throw MismatchError("compared steady states use different preferences");
    if (!(base.income == alt.income))
        throw MismatchError("compared steady states use different income processes");
    if (!(base.grid == alt.grid))
        throw MismatchError("compared steady states use different asset grids");

    ComparisonReport rep;
    rep.r_base = base.prices.r;
    rep.r_alt = alt.prices.r;
    rep.w_base = base.prices.w;
    rep.w_alt = alt.prices.w;
    rep.p_base = base.prices.p;
    rep.p_alt = alt.prices.p;

    rep.dy_f_pct = alt.sectors.y_f / base.sectors.y_f - 1.0;
    rep.dy_c_pct = alt.sectors.y_c / base.sectors.y_c - 1.0;
    rep.dk_pct = alt.agg.capital / base.agg.capital - 1.0;

    rep.food_8020_base = food_expenditure_ratio_8020(base);
    rep.food_8020_alt = food_expenditure_ratio_8020(alt);
    rep.d_food_8020 = rep.food_8020_alt - rep.food_8020_base;

    rep.exp_8020_base = expenditure_ratio_8020(base);
    rep.exp_8020_alt = expenditure_ratio_8020(alt);
    rep.d_exp_8020 = rep.exp_8020_alt - rep.exp_8020_base;

    rep.mean_food_share_base = base.agg.mean_food_share;
    rep.mean_food_share_alt = alt.agg.mean_food_share;
    rep.d_mean_food_share = rep.mean_food_share_alt - rep.mean_food_share_base;

    rep.wealth_gini_base = wealth_gini(base.dist, base.grid).value;
    rep.wealth_gini_alt = wealth_gini(alt.dist, alt.grid).value;
    rep.d_wealth_gini = rep.wealth_gini_alt - rep.wealth_gini_base;

    rep.wealthless_base = wealthless_share(base.dist, base.grid);
    rep.wealthless_alt = wealthless_share(alt.dist, alt.grid);
    rep.d_wealthless = rep.wealthless_alt - rep.wealthless_base;

    rep.deciles = welfare_decomposition(base, alt);
    return rep;
}

nlohmann::json snapshot_json(const SteadyState& state) {
    nlohmann::json j;
    j["format"] = "breadline-steady-state-v1";
    j["scenario"] = {{"xi_f", state.scenario.xi_f}, {"xi_c", state.scenario.xi_c}};
    j["preferences"] = {{"phi", state.prefs.phi},
                        {"f_bar", state.prefs.f_bar},
                        {"eta", state.prefs.eta},
                        {"beta", state.prefs.beta}};
    j["technology"] = {{"alpha", state.tech.alpha},
                       {"delta", state.tech.delta},
                       {"a_c", state.tech.a_c},
                       {"a_f", state.tech.a_f},
                       {"gap", state.tech.gap}};
    j["prices"] = {{"r", state.prices.r}, {"w", state.prices.w}, {"p", state.prices.p}};
    j["income"] = {{"levels", state.income.levels},
                   {"transition", state.income.transition},
                   {"stationary", state.income.stationary}};
    j["grid"] = state.grid.nodes;
    j["policy"] = {{"savings", state.policy.savings},
                   {"expenditures", state.policy.expenditures}};
    j["distribution"] = state.dist.mass;
    j["aggregates"] = {{"capital", state.agg.capital},
                       {"labor", state.agg.labor},
                       {"consumption", state.agg.consumption},
                       {"food", state.agg.food},
                       {"expenditures", state.agg.expenditures},
                       {"mean_food_share", state.agg.mean_food_share},
                       {"expenditure_deciles", state.agg.expenditure_deciles}};
    j["sectors"] = {{"y_f", state.sectors.y_f}, {"y_c", state.sectors.y_c},
                    {"l_f", state.sectors.l_f}, {"l_c", state.sectors.l_c},
                    {"k_f", state.sectors.k_f}, {"k_c", state.sectors.k_c},
                    {"goods_residual", state.sectors.goods_residual}};
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [rate, excess] : state.diag.excess_trace)
        trace.push_back({rate, excess});
    j["diagnostics"] = {{"excess_trace", std::move(trace)},
                        {"euler_max", state.diag.euler_max},
                        {"clearing_residual", state.diag.clearing_residual},
                        {"walras_residual", state.diag.walras_residual},
                        {"top_node_mass", state.diag.top_node_mass},
                        {"bisect_iterations", state.diag.bisect_iterations},
                        {"grid_doublings", state.diag.grid_doublings},
                        {"rate_lo", state.diag.rate_lo},
                        {"rate_hi", state.diag.rate_hi},
                        {"excess_lo", state.diag.excess_lo},
                        {"excess_hi", state.diag.excess_hi}};
    return j;
}

void write_snapshot(const SteadyState& state, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << snapshot_json(state).dump(2) << "\n";
}

}  // namespace breadline
