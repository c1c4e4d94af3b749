#pragma once

#include "breadline/errors.hpp"

namespace breadline {

// Stone-Geary preferences over non-food consumption c and food f:
//
//     U(c, f) = (c^phi * (f - f_bar)^(1-phi))^(1-eta) / (1 - eta)
//
// phi is the non-food expenditure share parameter, f_bar the subsistence
// food quantity, eta the CRRA coefficient and beta the discount factor.
struct Preferences {
    double phi;
    double f_bar;
    double eta;
    double beta;
    // Cached Cobb-Douglas constant phi^phi * (1-phi)^(1-phi).
    double util_const;

    Preferences(double phi, double f_bar, double eta, double beta);

    bool operator==(const Preferences&) const = default;
};

// A feasible within-period consumption choice. Satisfies the budget
// identity c + p*f = y_exp by construction.
struct ConsumptionBundle {
    double c;      // non-food consumption, numeraire units
    double f;      // food consumption, food units
    double y_exp;  // total expenditures
};

// Optimal split of expenditures y_exp between food and non-food at food
// price p:
//
//     c = phi * (y_exp - p*f_bar)
//     f = (1-phi) * y_exp / p + phi * f_bar
//
// Throws SubsistenceError unless y_exp > p*f_bar.
ConsumptionBundle demand(const Preferences& prefs, double p, double y_exp);

// Food expenditure share p*f/y_exp = (1-phi) + p*phi*f_bar / y_exp.
double food_share(const Preferences& prefs, double p, double y_exp);

// Utility of an arbitrary bundle (not necessarily optimal). Requires
// c > 0 and f > f_bar.
double direct_utility(const Preferences& prefs, double c, double f);

// Utility at the optimal split of y_exp:
//
//     I(p, y) = ((util_const * p^(phi-1) * (y_exp - p*f_bar))^(1-eta)) / (1-eta)
double indirect_utility(const Preferences& prefs, double p, double y_exp);

// Equivalent variation of moving from (p0, y0) to (p1, y1): the income
// adjustment at baseline prices p0 that replicates the utility of the
// new situation,
//
//     I(p0, y0 + EV) = I(p1, y1).
//
// Negative when the new situation is worse. The closed form is
//
//     EV = (p1/p0)^(phi-1) * (y1 - p1*f_bar) - (y0 - p0*f_bar);
//
// the defining identity is evaluated on both sides before returning and
// a relative discrepancy above 1e-10 raises an Error.
double equivalent_variation(const Preferences& prefs, double p0, double y0,
                            double p1, double y1);

// Partial-equilibrium variant: expenditures held at their baseline level,
// i.e. equivalent_variation with y1 = y0.
double equivalent_variation_pe(const Preferences& prefs, double p0, double y0,
                               double p1);

}  // namespace breadline
