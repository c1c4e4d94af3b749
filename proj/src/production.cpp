#include "breadline/production.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "breadline/csv.hpp"

namespace breadline {

Technology::Technology(double alpha_, double delta_, double a_c_, double a_f_)
    : alpha(alpha_), delta(delta_), a_c(a_c_), a_f(a_f_), gap(a_c_ / a_f_) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("capital share alpha must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw ParameterError("depreciation delta must lie in (0,1)");
    if (!(a_c > 0.0) || !(a_f > 0.0))
        throw ParameterError("sector TFP levels must be positive");
}

Technology Technology::from_gap(double alpha, double delta, double a_c,
                                double gap) {
    if (!(gap > 0.0))
        throw ParameterError("productivity gap must be positive");
    return Technology(alpha, delta, a_c, a_c / gap);
}

Technology apply_scenario(const Technology& tech, const ClimateScenario& s) {
    if (!(s.xi_f >= 0.0 && s.xi_f < 1.0) || !(s.xi_c >= 0.0 && s.xi_c < 1.0))
        throw ParameterError("sectoral losses must lie in [0,1)");
    return Technology(tech.alpha, tech.delta, (1.0 - s.xi_c) * tech.a_c,
                      (1.0 - s.xi_f) * tech.a_f);
}

Prices prices_from_capital(const Technology& tech, double k) {
    if (!(k > 0.0))
        throw ParameterError("capital per efficiency unit must be positive");
    Prices prices;
    prices.r = 1.0 + tech.a_c * tech.alpha * std::pow(k, tech.alpha - 1.0) -
               tech.delta;
    prices.w = tech.a_c * (1.0 - tech.alpha) * std::pow(k, tech.alpha);
    prices.p = tech.a_c / tech.a_f;
    return prices;
}

double weighted_damage(const std::vector<std::pair<double, double>>& loss_share) {
    double weighted = 0.0;
    double total_share = 0.0;
    for (const auto& [loss, share] : loss_share) {
        if (!std::isfinite(loss))
            throw ParameterError("regional loss must be finite");
        if (!(share >= 0.0))
            throw ParameterError("population shares must be nonnegative");
        weighted += loss * share;
        total_share += share;
    }
    // Published tables carry rounded shares; allow a small excess over 1.
    if (total_share > 1.02)
        throw ParameterError("population shares sum to " +
                             std::to_string(total_share) + " > 1");
    if (!(total_share > 0.0))
        throw ParameterError("population shares are all zero");
    return weighted / total_share;
}

std::vector<RegionalDamage> load_regional_damages(std::istream& in) {
    CsvReader reader(in);
    reader.require_columns({"region", "loss_baseline_pct", "loss_optimistic_pct",
                            "loss_pessimistic_pct", "population_share"});
    std::vector<RegionalDamage> rows;
    while (reader.next_row()) {
        RegionalDamage row;
        row.region = reader.text("region");
        row.loss_baseline_pct = reader.number("loss_baseline_pct");
        row.loss_optimistic_pct = reader.number("loss_optimistic_pct");
        row.loss_pessimistic_pct = reader.number("loss_pessimistic_pct");
        row.population_share = reader.number("population_share");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("regional damage table has no rows");
    return rows;
}

std::vector<RegionalDamage> load_regional_damages_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return load_regional_damages(in);
}

double weighted_damage(const std::vector<RegionalDamage>& rows, DamageColumn col) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(rows.size());
    for (const auto& row : rows) {
        double loss = 0.0;
        switch (col) {
            case DamageColumn::baseline: loss = row.loss_baseline_pct; break;
            case DamageColumn::optimistic: loss = row.loss_optimistic_pct; break;
            case DamageColumn::pessimistic: loss = row.loss_pessimistic_pct; break;
        }
        pairs.emplace_back(loss, row.population_share);
    }
    return weighted_damage(pairs);
}

SectorAccounts sector_accounts(double capital, double labor, double c_agg,
                               double f_agg, const Technology& tech) {
    if (!(capital > 0.0) || !(labor > 0.0))
        throw ParameterError("aggregates must be positive");
    if (!(f_agg >= 0.0))
        throw ParameterError("food demand must be nonnegative");

    const double k = capital / labor;
    const double k_alpha = std::pow(k, tech.alpha);

    SectorAccounts acc;
    acc.l_f = f_agg / (tech.a_f * k_alpha);
    if (acc.l_f > labor)
        throw ParameterError("food demand infeasible at given aggregates");
    acc.l_c = labor - acc.l_f;
    acc.y_f = f_agg;
    acc.y_c = tech.a_c * k_alpha * acc.l_c;
    acc.k_f = k * acc.l_f;
    acc.k_c = k * acc.l_c;
    acc.goods_residual = acc.y_c - (c_agg + tech.delta * capital);
    return acc;
}

}  // namespace breadline
