#include "breadline/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace breadline {

namespace {

struct Cells {
    std::vector<double> expenditure;
    std::vector<double> assets;
    std::vector<double> theta;
    std::vector<double> mass;
};

Cells flatten(const SteadyState& state) {
    const int m = state.dist.n_assets;
    const int n = state.dist.n_shocks;
    Cells cells;
    cells.expenditure.reserve(m * n);
    cells.assets.reserve(m * n);
    cells.theta.reserve(m * n);
    cells.mass.reserve(m * n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            cells.expenditure.push_back(state.policy.spend(i, j));
            cells.assets.push_back(state.grid.nodes[i]);
            cells.theta.push_back(state.income.levels[j]);
            cells.mass.push_back(state.dist.at(i, j));
        }
    }
    return cells;
}

// Splits the expenditure-sorted population into ten equal-mass bins,
// fractionally splitting boundary cells. counterfactual, when given,
// carries another policy's expenditures on the same cells; its bin means
// land in DecileStats::mean_expenditure_cf (same households, other
// steady state).
std::array<DecileStats, 10> decile_stats_from_cells(
    const Cells& cells, const Preferences& prefs, double p,
    const std::vector<double>* counterfactual = nullptr) {
    std::vector<int> order(cells.mass.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return cells.expenditure[a] < cells.expenditure[b];
    });

    const double total =
        std::accumulate(cells.mass.begin(), cells.mass.end(), 0.0);

    std::array<DecileStats, 10> stats{};
    std::array<double, 10> bin_mass{};
    std::array<double, 10> share_sum{};
    std::array<bool, 10> seen{};
    const double step = total / 10.0;
    double cum = 0.0;
    for (int idx : order) {
        const double mass = cells.mass[idx];
        if (mass <= 0.0) continue;
        const double lo = cum;
        const double hi = cum + mass;
        cum = hi;
        const int first_bin = std::min(9, static_cast<int>(lo / step));
        const int last_bin = std::min(9, static_cast<int>(hi / step));
        for (int bin = first_bin; bin <= last_bin; ++bin) {
            // The top bin absorbs rounding slack at the upper boundary.
            const double band_hi = (bin == 9) ? hi : (bin + 1) * step;
            const double take = std::min(hi, band_hi) - std::max(lo, bin * step);
            if (take <= 0.0) continue;
            auto& s = stats[bin];
            s.mean_expenditure += take * cells.expenditure[idx];
            s.mean_assets += take * cells.assets[idx];
            s.mean_theta += take * cells.theta[idx];
            if (counterfactual)
                s.mean_expenditure_cf += take * (*counterfactual)[idx];
            share_sum[bin] += take * food_share(prefs, p, cells.expenditure[idx]);
            if (!seen[bin]) {
                s.min_expenditure = cells.expenditure[idx];
                seen[bin] = true;
            }
            bin_mass[bin] += take;
        }
    }
    for (int d = 0; d < 10; ++d) {
        const double mass = bin_mass[d];
        stats[d].mean_expenditure /= mass;
        stats[d].mean_assets /= mass;
        stats[d].mean_theta /= mass;
        stats[d].mean_expenditure_cf /= mass;
        stats[d].mean_food_share = share_sum[d] / mass;
    }
    return stats;
}

void require_same_primitives(const SteadyState& base, const SteadyState& alt) {
    if (!(base.prefs == alt.prefs) || !(base.income == alt.income) ||
        !(base.grid == alt.grid))
        throw MismatchError(
            "steady states do not share preferences, income process and grid");
}

}  // namespace

GiniResult wealth_gini(const StationaryDistribution& dist, const AssetGrid& grid) {
    const int m = dist.n_assets;
    const int n = dist.n_shocks;
    std::vector<double> wealth(m);
    std::vector<double> mass(m, 0.0);
    for (int i = 0; i < m; ++i) {
        wealth[i] = grid.nodes[i];
        for (int j = 0; j < n; ++j) mass[i] += dist.at(i, j);
    }
    GiniResult result;
    if (grid.lo() < 0.0) {
        for (double& v : wealth) v -= grid.lo();
        result.shifted = true;
    }
    result.value = gini(wealth, mass);
    return result;
}

double wealthless_share(const StationaryDistribution& dist, const AssetGrid& grid,
                        double threshold) {
    double share = 0.0;
    for (int i = 0; i < dist.n_assets; ++i) {
        if (grid.nodes[i] > threshold) break;
        for (int j = 0; j < dist.n_shocks; ++j) share += dist.at(i, j);
    }
    return share;
}

double expenditure_ratio_8020(const SteadyState& state) {
    const Cells cells = flatten(state);
    return ratio_8020(cells.expenditure, cells.mass);
}

double food_expenditure_ratio_8020(const SteadyState& state) {
    const Cells cells = flatten(state);
    std::vector<double> food_spend(cells.expenditure.size());
    for (size_t c = 0; c < food_spend.size(); ++c) {
        const ConsumptionBundle b =
            demand(state.prefs, state.prices.p, cells.expenditure[c]);
        food_spend[c] = state.prices.p * b.f;
    }
    return ratio_8020(food_spend, cells.mass);
}

std::array<DecileStats, 10> expenditure_decile_stats(const SteadyState& state) {
    return decile_stats_from_cells(flatten(state), state.prefs, state.prices.p);
}

std::array<DecileRow, 10> welfare_decomposition(const SteadyState& base,
                                                const SteadyState& alt) {
    require_same_primitives(base, alt);

    // Deciles are matched by expenditure rank across the two stationary
    // distributions: a steady-state comparison, so wealth has adjusted.
    // mean_expenditure_cf instead prices the base-state decile population
    // under the other policy (the short-run impact on the same cells); it
    // is reported alongside but does not enter the CEVs.
    const Cells cells = flatten(base);
    std::vector<double> alt_on_base(cells.expenditure.size());
    for (int i = 0; i < base.dist.n_assets; ++i)
        for (int j = 0; j < base.dist.n_shocks; ++j)
            alt_on_base[i * base.dist.n_shocks + j] = alt.policy.spend(i, j);
    const auto stats_base = decile_stats_from_cells(cells, base.prefs,
                                                    base.prices.p, &alt_on_base);
    const auto stats_alt = expenditure_decile_stats(alt);
    const double p0 = base.prices.p;
    const double p1 = alt.prices.p;

    std::array<DecileRow, 10> rows{};
    for (int d = 0; d < 10; ++d) {
        DecileRow& row = rows[d];
        const DecileStats& b = stats_base[d];
        const DecileStats& a = stats_alt[d];
        row.decile = d + 1;
        row.mean_exp_base = b.mean_expenditure;
        row.mean_exp_alt = a.mean_expenditure;
        row.mean_exp_alt_fixed = b.mean_expenditure_cf;
        row.food_share_base = b.mean_food_share;

        const double y0 = b.mean_expenditure;
        row.cev_pe = equivalent_variation_pe(base.prefs, p0, y0, p1) / y0;
        row.cev_ge =
            equivalent_variation(base.prefs, p0, y0, p1, a.mean_expenditure) /
            y0;
        row.welfare_gap = row.cev_pe - row.cev_ge;
        row.infeasible_at_pe = !(b.min_expenditure > p1 * base.prefs.f_bar);

        row.labor_delta =
            alt.prices.w * a.mean_theta - base.prices.w * b.mean_theta;
        row.capital_return_delta =
            b.mean_assets * (alt.prices.r - base.prices.r);
        row.capital_saving_delta =
            alt.prices.r * (a.mean_assets - b.mean_assets);
        row.total_income_delta = row.labor_delta + row.capital_return_delta +
                                 row.capital_saving_delta;
    }
    return rows;
}

std::array<PeDecileRow, 10> pe_incidence(const SteadyState& base, double p_new) {
    const auto stats = expenditure_decile_stats(base);
    const double p0 = base.prices.p;

    std::array<PeDecileRow, 10> rows{};
    for (int d = 0; d < 10; ++d) {
        PeDecileRow& row = rows[d];
        const double y0 = stats[d].mean_expenditure;
        row.decile = d + 1;
        row.mean_expenditure = y0;
        row.infeasible = !(stats[d].min_expenditure > p_new * base.prefs.f_bar);
        const ConsumptionBundle before = demand(base.prefs, p0, y0);
        const ConsumptionBundle after = demand(base.prefs, p_new, y0);
        row.dc = after.c - before.c;
        row.df = after.f - before.f;
        row.d_food_share = food_share(base.prefs, p_new, y0) -
                           food_share(base.prefs, p0, y0);
        row.cev_pe = equivalent_variation_pe(base.prefs, p0, y0, p_new) / y0;
    }
    return rows;
}

double engel_approximation(double food_share0, double dp_relative) {
    if (!(food_share0 > 0.0 && food_share0 < 1.0))
        throw ParameterError("initial food share must lie in (0,1)");
    return -food_share0 * dp_relative;
}

std::vector<SharePoint> food_share_curve(const SteadyState& base,
                                         const SteadyState& alt, int n_points) {
    if (n_points < 2) throw ParameterError("share curve needs at least 2 points");
    const Cells cells = flatten(base);
    const double mean =
        base.agg.expenditures;  // total mass is one, so this is the mean

    std::vector<SharePoint> curve;
    curve.reserve(n_points);
    for (int q = 1; q <= n_points; ++q) {
        const double y = weighted_quantile(cells.expenditure, cells.mass,
                                           q / (n_points + 1.0));
        SharePoint pt;
        pt.normalized_expenditure = y / mean;
        pt.food_share_base = food_share(base.prefs, base.prices.p, y);
        // Same normalized expenditure level evaluated at the other
        // state's price, so consumption patterns compare across states.
        pt.food_share_alt = food_share(alt.prefs, alt.prices.p, y);
        curve.push_back(pt);
    }
    return curve;
}

}  // namespace breadline
