#include "breadline/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace breadline {

namespace {

struct SortedAtoms {
    std::vector<double> value;
    std::vector<double> mass;
    double total_mass = 0.0;
};

SortedAtoms sort_atoms(const std::vector<double>& values,
                       const std::vector<double>& masses) {
    if (values.size() != masses.size() || values.empty())
        throw ParameterError("values and masses must be equally sized and nonempty");
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] < values[b]; });
    SortedAtoms out;
    out.value.reserve(values.size());
    out.mass.reserve(values.size());
    for (int idx : order) {
        if (!(masses[idx] >= 0.0))
            throw ParameterError("masses must be nonnegative");
        if (masses[idx] == 0.0) continue;
        out.value.push_back(values[idx]);
        out.mass.push_back(masses[idx]);
        out.total_mass += masses[idx];
    }
    if (!(out.total_mass > 0.0)) throw ParameterError("total mass must be positive");
    return out;
}

}  // namespace

double weighted_quantile(const std::vector<double>& values,
                         const std::vector<double>& masses, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile must lie in [0,1]");
    const SortedAtoms atoms = sort_atoms(values, masses);
    const double target = q * atoms.total_mass;
    double cum = 0.0;
    for (size_t i = 0; i < atoms.value.size(); ++i) {
        cum += atoms.mass[i];
        if (cum >= target) return atoms.value[i];
    }
    return atoms.value.back();
}

double quantile_band_mean(const std::vector<double>& values,
                          const std::vector<double>& masses, double q_lo,
                          double q_hi) {
    if (!(q_lo >= 0.0 && q_hi <= 1.0 && q_lo < q_hi))
        throw ParameterError("quantile band must satisfy 0 <= lo < hi <= 1");
    const SortedAtoms atoms = sort_atoms(values, masses);
    const double lo_mass = q_lo * atoms.total_mass;
    const double hi_mass = q_hi * atoms.total_mass;

    double cum = 0.0;
    double band_mass = 0.0;
    double band_sum = 0.0;
    for (size_t i = 0; i < atoms.value.size(); ++i) {
        const double lo = cum;
        const double hi = cum + atoms.mass[i];
        // Overlap of this atom's mass interval with the requested band.
        const double take = std::min(hi, hi_mass) - std::max(lo, lo_mass);
        if (take > 0.0) {
            band_mass += take;
            band_sum += take * atoms.value[i];
        }
        cum = hi;
        if (lo >= hi_mass) break;
    }
    if (!(band_mass > 0.0)) throw ParameterError("empty quantile band");
    return band_sum / band_mass;
}

double ratio_8020(const std::vector<double>& values,
                  const std::vector<double>& masses) {
    const double bottom = quantile_band_mean(values, masses, 0.0, 0.2);
    const double top = quantile_band_mean(values, masses, 0.8, 1.0);
    if (!(bottom > 0.0))
        throw ParameterError("bottom quintile mean is not positive");
    return top / bottom;
}

double gini(const std::vector<double>& values,
            const std::vector<double>& masses) {
    const SortedAtoms atoms = sort_atoms(values, masses);
    double total_value = 0.0;
    for (size_t i = 0; i < atoms.value.size(); ++i) {
        if (!(atoms.value[i] >= 0.0))
            throw ParameterError("gini requires nonnegative values");
        total_value += atoms.value[i] * atoms.mass[i];
    }
    if (total_value == 0.0) return 0.0;

    // 1 - sum_i m_i (L_{i-1} + L_i) over the value-sorted atoms, with
    // L the cumulative value share and m the population share.
    double lorenz_prev = 0.0;
    double cum_value = 0.0;
    double acc = 0.0;
    for (size_t i = 0; i < atoms.value.size(); ++i) {
        cum_value += atoms.value[i] * atoms.mass[i];
        const double lorenz = cum_value / total_value;
        acc += (atoms.mass[i] / atoms.total_mass) * (lorenz_prev + lorenz);
        lorenz_prev = lorenz;
    }
    return 1.0 - acc;
}

}  // namespace breadline
