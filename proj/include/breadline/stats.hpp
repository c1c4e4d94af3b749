#pragma once

#include <vector>

#include "breadline/errors.hpp"

namespace breadline {

// Weighted statistics over atoms (value, mass). Masses need not sum to
// one; they must be nonnegative with a positive total. Boundary atoms
// are split fractionally, so quantile bands partition the population
// exactly.

// Smallest atom value v such that at least fraction q of the mass lies
// at or below v.
double weighted_quantile(const std::vector<double>& values,
                         const std::vector<double>& masses, double q);

// Mean of values over the mass band (q_lo, q_hi] of the value-sorted
// population.
double quantile_band_mean(const std::vector<double>& values,
                          const std::vector<double>& masses, double q_lo,
                          double q_hi);

// Mean of the top quintile over mean of the bottom quintile.
double ratio_8020(const std::vector<double>& values,
                  const std::vector<double>& masses);

// Mass-weighted Gini coefficient from the Lorenz curve of a nonnegative
// variable. Invariant to splitting or merging equal-value atoms.
double gini(const std::vector<double>& values,
            const std::vector<double>& masses);

}  // namespace breadline
