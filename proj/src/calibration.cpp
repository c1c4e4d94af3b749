#include "breadline/calibration.hpp"

#include <cmath>
#include <fstream>

#include "breadline/csv.hpp"

namespace breadline {

std::vector<ExpenditureSegment> load_segments(std::istream& in) {
    CsvReader reader(in);
    reader.require_columns({"label", "lower_bound", "upper_bound",
                            "mean_expenditure", "food_share",
                            "population_weight"});
    std::vector<ExpenditureSegment> rows;
    while (reader.next_row()) {
        ExpenditureSegment seg;
        seg.label = reader.text("label");
        seg.lower_bound = reader.number("lower_bound");
        seg.upper_bound = reader.number("upper_bound");
        seg.mean_expenditure = reader.number("mean_expenditure");
        seg.food_share = reader.number("food_share");
        seg.weight = reader.number("population_weight");
        if (!(seg.food_share > 0.0 && seg.food_share < 1.0))
            throw ParameterError("segment food shares must lie in (0,1)");
        if (!(seg.weight > 0.0))
            throw ParameterError("segment weights must be positive");
        if (!(seg.mean_expenditure > 0.0))
            throw ParameterError("segment expenditures must be positive");
        rows.push_back(std::move(seg));
    }
    if (rows.size() < 2)
        throw ParameterError("need at least two expenditure segments");
    return rows;
}

std::vector<ExpenditureSegment> load_segments_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return load_segments(in);
}

PreferenceFit estimate_preferences(const std::vector<ExpenditureSegment>& data,
                                   double p_data, double mean_expenditure,
                                   bool weighted) {
    if (data.size() < 2)
        throw ParameterError("need at least two segments to fit two coefficients");
    if (!(p_data > 0.0))
        throw ParameterError("observed food price must be positive");

    // Weighted least squares of share on [1, 1/y].
    double sw = 0.0, swz = 0.0, swzz = 0.0, sws = 0.0, swzs = 0.0;
    double total_weight = 0.0, weighted_y = 0.0;
    for (const auto& seg : data) {
        const double w = weighted ? seg.weight : 1.0;
        const double z = 1.0 / seg.mean_expenditure;
        sw += w;
        swz += w * z;
        swzz += w * z * z;
        sws += w * seg.food_share;
        swzs += w * z * seg.food_share;
        total_weight += seg.weight;
        weighted_y += seg.weight * seg.mean_expenditure;
    }
    const double det = sw * swzz - swz * swz;
    const double scale = sw * swzz;
    if (!(std::fabs(det) > 1e-12 * scale))
        throw ParameterError(
            "segments share a single expenditure level; the regression is "
            "collinear");

    PreferenceFit fit;
    fit.n_segments = static_cast<int>(data.size());
    fit.slope = (sw * swzs - swz * sws) / det;
    fit.intercept = (sws - fit.slope * swz) / sw;
    fit.phi = 1.0 - fit.intercept;
    if (!(fit.phi > 0.0 && fit.phi < 1.0))
        throw ParameterError("fitted phi = " + std::to_string(fit.phi) +
                             " lies outside (0,1); data are inconsistent "
                             "with the demand system");

    fit.mean_expenditure =
        mean_expenditure > 0.0 ? mean_expenditure : weighted_y / total_weight;
    fit.f_bar = fit.slope / (p_data * fit.phi) / fit.mean_expenditure;
    if (fit.f_bar < 0.0)
        throw ParameterError("fitted subsistence level is negative");

    // Goodness of fit and coefficient standard errors on the weighted
    // moments; exact-fit inputs give r_squared = 1 and zero errors.
    double ssr = 0.0, sst = 0.0;
    const double mean_share = sws / sw;
    for (const auto& seg : data) {
        const double w = weighted ? seg.weight : 1.0;
        const double z = 1.0 / seg.mean_expenditure;
        const double fitted = fit.intercept + fit.slope * z;
        ssr += w * (seg.food_share - fitted) * (seg.food_share - fitted);
        sst += w * (seg.food_share - mean_share) * (seg.food_share - mean_share);
    }
    fit.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    if (fit.n_segments > 2) {
        const double variance = ssr / (fit.n_segments - 2);
        fit.se_intercept = std::sqrt(std::max(0.0, variance * swzz / det));
        fit.se_slope = std::sqrt(std::max(0.0, variance * sw / det));
    }
    return fit;
}

CalibrationResult calibrate_spread(
    double target_8020, double rho, int n_states,
    const std::function<double(const IncomeProcess&)>& model_ratio,
    double sigma_lo, double sigma_hi, double rel_tol, int max_iter) {
    if (!(target_8020 > 1.0))
        throw ParameterError("target 80-20 ratio must exceed 1; equality "
                             "needs no income risk");
    if (!(sigma_lo > 0.0 && sigma_hi > sigma_lo))
        throw ParameterError("invalid sigma bracket");

    CalibrationResult result;
    result.target_ratio = target_8020;

    auto probe = [&](double sigma) -> CalibrationPoint {
        CalibrationPoint pt;
        pt.sigma = sigma;
        try {
            const IncomeProcess income = discretize_ar1(rho, sigma, n_states);
            pt.ratio = model_ratio(income);
            pt.solved = true;
        } catch (const Error& err) {
            pt.note = err.what();
        }
        result.trace.push_back(pt);
        return pt;
    };

    // Coarse log-spaced scan. Evaluations can fail on both ends: at tiny
    // spreads the equilibrium rate sits inside the patience margin, at
    // wide spreads subsistence becomes infeasible. The achieved ratio is
    // increasing in sigma over the solvable window.
    const int n_scan = 7;
    CalibrationPoint below{};
    CalibrationPoint above{};
    bool have_below = false, have_above = false;
    for (int s = 0; s < n_scan && !have_above; ++s) {
        const double t = static_cast<double>(s) / (n_scan - 1);
        const CalibrationPoint pt =
            probe(sigma_lo * std::pow(sigma_hi / sigma_lo, t));
        if (!pt.solved) continue;
        if (pt.ratio < target_8020) {
            below = pt;
            have_below = true;
        } else {
            above = pt;
            have_above = true;
        }
    }
    if (have_below && !have_above) {
        // Push toward the upper feasibility edge looking for a crossing.
        double lo = below.sigma;
        double hi = sigma_hi;
        for (const auto& pt : result.trace)
            if (!pt.solved && pt.sigma > lo) hi = std::min(hi, pt.sigma);
        for (int i = 0; i < 20 && !have_above; ++i) {
            const double mid = 0.5 * (lo + hi);
            const CalibrationPoint pt = probe(mid);
            if (!pt.solved) {
                hi = mid;
            } else if (pt.ratio >= target_8020) {
                above = pt;
                have_above = true;
            } else {
                below = pt;
                lo = mid;
            }
        }
    }
    if (!have_above ||
        (!have_below && above.ratio > target_8020 * (1.0 + rel_tol))) {
        double best = 0.0, worst = 0.0;
        std::string last_note;
        for (const auto& pt : result.trace) {
            if (pt.solved) {
                best = std::max(best, pt.ratio);
                if (worst == 0.0 || pt.ratio < worst) worst = pt.ratio;
            } else {
                last_note = pt.note;
            }
        }
        std::string message = "80-20 target " + std::to_string(target_8020) +
                              " unreachable over the sigma bracket";
        if (best > 0.0)
            message += "; achieved range [" + std::to_string(worst) + ", " +
                       std::to_string(best) + "]";
        if (!last_note.empty()) message += "; last failure: " + last_note;
        throw BracketError(message);
    }

    // Bisection between the bracketing spreads on the monotone map.
    CalibrationPoint current = above;
    double lo = have_below ? below.sigma : sigma_lo;
    double hi = above.sigma;
    for (int i = 0; i < max_iter; ++i) {
        if (std::fabs(current.ratio - target_8020) <= rel_tol * target_8020)
            break;
        const double mid = 0.5 * (lo + hi);
        const CalibrationPoint pt = probe(mid);
        if (!pt.solved) {
            lo = mid;  // treat failures as "ratio too low to measure"
            continue;
        }
        current = pt;
        if (pt.ratio < target_8020)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-10) break;
    }
    if (std::fabs(current.ratio - target_8020) > rel_tol * target_8020) {
        // Fall back to the closest evaluated point.
        for (const auto& pt : result.trace)
            if (pt.solved && std::fabs(pt.ratio - target_8020) <
                                 std::fabs(current.ratio - target_8020))
                current = pt;
    }
    if (std::fabs(current.ratio - target_8020) > rel_tol * target_8020)
        throw ConvergenceError("sigma calibration stalled at ratio " +
                               std::to_string(current.ratio));

    result.sigma = current.sigma;
    result.achieved_ratio = current.ratio;
    return result;
}

}  // namespace breadline
