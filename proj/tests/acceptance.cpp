// End-to-end acceptance suite: runs every acceptance criterion at its
// stated tolerance and prints one PASS/FAIL line per criterion. The
// process exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "breadline/analysis.hpp"
#include "breadline/calibration.hpp"
#include "breadline/config.hpp"
#include "breadline/csv.hpp"
#include "breadline/runner.hpp"
#include "support/oracles.hpp"

using namespace breadline;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& title, bool pass,
            const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", id,
                title.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void info(const std::string& line) {
    std::printf("       info: %s\n", line.c_str());
    std::fflush(stdout);
}

std::string num(double v) { return format_number(v); }

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

// ---------------------------------------------------------------- 1
void criterion_static_block() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(50411);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_budget = 0.0, worst_utility = 0.0, worst_ev = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Preferences prefs(0.05 + 0.9 * u(rng), 0.4 * u(rng),
                                u(rng) < 0.5 ? 2.0 : 0.5 + 3.0 * u(rng),
                                0.9 + 0.09 * u(rng));
        const double p0 = 0.3 + 3.0 * u(rng);
        const double p1 = 0.3 + 3.0 * u(rng);
        const double y0 = p0 * prefs.f_bar + 0.02 + 4.0 * u(rng);
        const double y1 = p1 * prefs.f_bar + 0.02 + 4.0 * u(rng);

        const ConsumptionBundle b = demand(prefs, p0, y0);
        worst_budget =
            std::max(worst_budget, std::fabs(b.c + p0 * b.f - y0) / y0);

        const double direct = direct_utility(prefs, b.c, b.f);
        const double indirect = indirect_utility(prefs, p0, y0);
        worst_utility = std::max(
            worst_utility, std::fabs(direct - indirect) / std::fabs(direct));

        const double ev = equivalent_variation(prefs, p0, y0, p1, y1);
        const double lhs = indirect_utility(prefs, p0, y0 + ev);
        const double rhs = indirect_utility(prefs, p1, y1);
        worst_ev = std::max(worst_ev, std::fabs(lhs - rhs) / std::fabs(rhs));
    }
    const double seconds = elapsed_s(start);
    const bool pass = worst_budget <= 1e-14 && worst_utility <= 1e-12 &&
                      worst_ev <= 1e-10 && seconds < 1.0;
    report(1, "static-block exactness over 1e4 randomized inputs", pass,
           "budget " + num(worst_budget) + ", utility " + num(worst_utility) +
               ", EV identity " + num(worst_ev) + ", " + num(seconds) + " s");
}

// ---------------------------------------------------------------- 2
void criterion_solver(const SteadyState& default_state) {
    const auto start = std::chrono::steady_clock::now();

    const Preferences prefs{0.8196, 0.0564, 2.0, 0.975};
    const IncomeProcess income = discretize_ar1(0.23, 0.6, 2);
    const AssetGrid grid = AssetGrid::exponential(0.0, 12.0, 20, 3.0);
    const Prices prices{1.02, 1.0, 2.49};
    const Policy policy = egm_solve(prefs, prices, income, grid);
    const oracles::VfiResult vfi =
        oracles::value_iteration(prefs, prices, income, grid);
    bool within_cell = true;
    for (int i = 0; i < grid.size(); ++i)
        for (int j = 0; j < income.n_states; ++j) {
            const int c = vfi.choice[i * income.n_states + j];
            const double lo = grid.nodes[std::max(0, c - 1)] - 1e-9;
            const double hi =
                grid.nodes[std::min(grid.size() - 1, c + 1)] + 1e-9;
            const double save = policy.save(i, j);
            within_cell = within_cell && save >= lo && save <= hi;
        }

    const double euler = default_state.diag.euler_max;
    const double seconds = elapsed_s(start);
    const bool pass = within_cell && euler < 1e-6 && seconds < 30.0;
    report(2, "EGM matches brute-force VFI; default-grid Euler residuals",
           pass,
           std::string(within_cell ? "within one cell" : "VFI MISMATCH") +
               ", max interior residual " + num(euler) + ", " + num(seconds) +
               " s");
}

// ---------------------------------------------------------------- 3
void criterion_reduction() {
    RunConfig cfg;
    cfg.f_bar = 0.0;
    const IncomeProcess income = cfg.income();
    RunConfig flat_cfg = cfg;
    flat_cfg.g_apg = 1.0;

    const SteadyState gap =
        solve_steady_state(cfg.preferences(), cfg.technology(), {0.0, 0.0},
                           income, cfg.grid, cfg.solver);
    const SteadyState flat = solve_steady_state(
        flat_cfg.preferences(), flat_cfg.technology(), {0.0, 0.0}, income,
        flat_cfg.grid, flat_cfg.solver);

    const double dr = std::fabs(gap.prices.r - flat.prices.r);
    const double dk =
        std::fabs(gap.agg.capital - flat.agg.capital) / flat.agg.capital;
    const double wedge = 1.0 / cfg.beta - 1.0 - (flat.prices.r - 1.0);
    const bool pass = dr <= 1e-8 && dk <= 1e-8 && wedge > 0.0;
    report(3, "one-good reduction at f_bar = 0, g_apg = 1", pass,
           "|dr| " + num(dr) + ", |dK|/K " + num(dk) +
               ", precautionary wedge " + num(wedge));
}

// ---------------------------------------------------------------- 4
void criterion_distribution_oracle() {
    const Preferences prefs{0.8196, 0.0564, 2.0, 0.975};
    const IncomeProcess income = discretize_ar1(0.23, 0.55, 5);
    const AssetGrid grid = AssetGrid::exponential(0.0, 30.0, 40, 4.0);
    const Prices prices{1.02, 1.3, 2.49};
    const Policy policy = egm_solve(prefs, prices, income, grid);
    const StationaryDistribution dist =
        stationary(policy, income, grid, 1e-13);
    const std::vector<double> exact =
        oracles::dense_stationary(policy, income, grid);
    double sup = 0.0;
    for (size_t c = 0; c < exact.size(); ++c)
        sup = std::max(sup, std::fabs(exact[c] - dist.mass[c]));
    report(4, "stationary distribution matches dense eigenvector (200 cells)",
           sup < 1e-8, "sup distance " + num(sup));
}

// ---------------------------------------------------------------- 5
void criterion_calibration() {
    const auto start = std::chrono::steady_clock::now();
    RunConfig cfg;
    const std::function<double(const IncomeProcess&)> model_ratio =
        [&cfg](const IncomeProcess& income) {
            const SteadyState ss = solve_steady_state(
                cfg.preferences(), cfg.technology(), {0.0, 0.0}, income,
                cfg.grid, cfg.solver);
            return expenditure_ratio_8020(ss);
        };
    bool pass = false;
    std::string detail;
    try {
        const CalibrationResult cal =
            calibrate_spread(cfg.target_8020, cfg.rho, cfg.n_states,
                             model_ratio, cfg.sigma_lo, cfg.sigma_hi);
        pass = cal.achieved_ratio >= 20.5 && cal.achieved_ratio <= 21.5;
        detail = "sigma " + num(cal.sigma) + ", achieved 80-20 " +
                 num(cal.achieved_ratio);
    } catch (const Error& err) {
        detail = err.what();
    }
    detail += ", " + num(elapsed_s(start)) + " s";
    report(5, "calibrated no-damage expenditure 80-20 in [20.5, 21.5]", pass,
           detail);
    if (!pass)
        info("the subsistence feasibility requirement (worst-state labor "
             "income above p*f_bar at every admissible rate) caps the "
             "income spread; consumption smoothing then bounds the "
             "stationary expenditure 80-20 far below the survey target");
}

// ---------------------------------------------------------------- 6
void criterion_regional_weights() {
    bool pass = false;
    std::string detail;
    try {
        const auto rows =
            load_regional_damages_file("data/regional_damages.csv");
        const double loss = weighted_damage(rows, DamageColumn::baseline);
        pass = std::fabs(loss - (-24.6)) <= 0.5;
        detail = "population-weighted baseline loss " + num(loss) + " pct";
    } catch (const std::exception& err) {
        detail = err.what();
    }
    report(6, "regional damage table weights to -24.6 +/- 0.5 pp", pass,
           detail);
}

// ---------------------------------------------------------------- 7
void criterion_table2(const SteadyState& base, const SteadyState& damaged) {
    const ComparisonReport rep = compare(base, damaged);
    const bool signs = rep.dy_f_pct < 0.0 && rep.dy_c_pct < 0.0 &&
                       std::fabs(rep.dy_f_pct) > std::fabs(rep.dy_c_pct) &&
                       rep.dk_pct > 0.0 && rep.d_mean_food_share > 0.0 &&
                       rep.d_exp_8020 < 0.0;
    const bool gini_ok = std::fabs(rep.d_wealth_gini) < 0.005;
    report(7, "steady-state comparison sign pattern and Gini bound",
           signs && gini_ok,
           "dY_f " + num(rep.dy_f_pct) + ", dY_c " + num(rep.dy_c_pct) +
               ", dK " + num(rep.dk_pct) + ", d(share) " +
               num(rep.d_mean_food_share) + ", d(80-20) " +
               num(rep.d_exp_8020) + ", |dGini| " +
               num(std::fabs(rep.d_wealth_gini)));
    // Published magnitudes are not promised reproducible (the income
    // spread is under-specified); compared informationally at +/-50%.
    const auto band = [](double ours, double published) {
        return std::fabs(ours - published) <= 0.5 * std::fabs(published);
    };
    info(std::string("published-magnitude bands (informational): dY_f ") +
         (band(rep.dy_f_pct, -0.1303) ? "within" : "outside") +
         " 50% of -0.1303, dY_c " +
         (band(rep.dy_c_pct, -0.015) ? "within" : "outside") +
         " 50% of -0.015, dK " +
         (band(rep.dk_pct, 0.028) ? "within" : "outside") + " 50% of 0.028");
}

// ---------------------------------------------------------------- 8
void criterion_welfare_gaps(const SteadyState& base,
                            const std::vector<const SteadyState*>& damaged) {
    std::array<std::array<DecileRow, 10>, 3> tables;
    for (int s = 0; s < 3; ++s)
        tables[s] = compare(base, *damaged[s]).deciles;

    bool all_negative = true;
    bool decile_monotone = true;
    bool size_monotone = true;
    for (int d = 0; d < 10; ++d) {
        for (int s = 0; s < 3; ++s)
            all_negative = all_negative && tables[s][d].welfare_gap < 0.0;
        if (d > 0)
            for (int s = 0; s < 3; ++s)
                decile_monotone =
                    decile_monotone &&
                    std::fabs(tables[s][d].welfare_gap) <=
                        std::fabs(tables[s][d - 1].welfare_gap) + 1e-12;
        size_monotone =
            size_monotone &&
            std::fabs(tables[0][d].welfare_gap) <=
                std::fabs(tables[1][d].welfare_gap) + 1e-12 &&
            std::fabs(tables[1][d].welfare_gap) <=
                std::fabs(tables[2][d].welfare_gap) + 1e-12;
    }
    double top_spread = 0.0;
    for (int d = 8; d < 10; ++d) {
        double hi = 0.0, lo = 1e300;
        for (int s = 0; s < 3; ++s) {
            hi = std::max(hi, std::fabs(tables[s][d].welfare_gap));
            lo = std::min(lo, std::fabs(tables[s][d].welfare_gap));
        }
        top_spread = std::max(top_spread, (hi - lo) / hi);
    }
    const bool top_flat = top_spread < 0.20;
    report(8, "PE-GE welfare gap pattern across deciles and loss sizes",
           all_negative && decile_monotone && size_monotone && top_flat,
           std::string("all-negative ") + (all_negative ? "yes" : "NO") +
               ", nonincreasing-over-deciles " +
               (decile_monotone ? "yes" : "NO") + ", increasing-in-loss " +
               (size_monotone ? "yes" : "NO") + ", top-two spread " +
               num(100.0 * top_spread) + "%");
    std::string row = "decile gaps (baseline loss):";
    for (int d = 0; d < 10; ++d)
        row += " " + num(tables[1][d].welfare_gap);
    info(row);
}

// ---------------------------------------------------------------- 9
void criterion_sweep(const RunConfig& cfg, const SteadyState& base) {
    const std::vector<double> losses{0.10, 0.15, 0.20, 0.25};
    const double share_c =
        base.sectors.y_c /
        (base.sectors.y_c + base.prices.p * base.sectors.y_f);

    struct Cell {
        double d_gini = 0.0, d_8020 = 0.0, d_wealthless = 0.0;
        bool solved = false;
    };
    std::array<std::array<Cell, 4>, 3> panel{};
    const std::vector<std::string> allocs{"ag-only", "symmetric", "nonag-only"};
    for (size_t a = 0; a < allocs.size(); ++a) {
        for (size_t l = 0; l < losses.size(); ++l) {
            try {
                const ClimateScenario sc =
                    allocation_scenario(allocs[a], losses[l], share_c);
                const auto states = solve_on_shared_grid(cfg, {{0.0, 0.0}, sc});
                const ComparisonReport rep = compare(states[0], states[1]);
                panel[a][l] = {rep.d_wealth_gini, rep.d_exp_8020,
                               rep.d_wealthless, true};
            } catch (const std::exception&) {
                panel[a][l].solved = false;
            }
        }
    }

    bool all_solved = true;
    for (const auto& row : panel)
        for (const auto& cell : row) all_solved = all_solved && cell.solved;

    // ag-only: Gini about unchanged, small rise in the wealthless share.
    bool ag_gini = true, ag_wealthless = true;
    for (const auto& cell : panel[0]) {
        ag_gini = ag_gini && std::fabs(cell.d_gini) < 0.005;
        ag_wealthless = ag_wealthless && cell.d_wealthless > 0.0 &&
                        cell.d_wealthless < 0.05;
    }
    // symmetric: wealthless share increasing in the loss, order 10 pp at
    // the largest loss.
    bool sym_increasing = true;
    for (int l = 1; l < 4; ++l)
        sym_increasing =
            sym_increasing &&
            panel[1][l].d_wealthless > panel[1][l - 1].d_wealthless;
    const bool sym_large = panel[1][3].d_wealthless >= 0.05;
    // nonag-only: largest expenditure-inequality decline at the top loss.
    const bool nonag_largest = panel[2][3].d_8020 < panel[0][3].d_8020 &&
                               panel[2][3].d_8020 < panel[1][3].d_8020;

    report(9, "damage-allocation sweep qualitative panel",
           all_solved && ag_gini && ag_wealthless && sym_increasing &&
               sym_large && nonag_largest,
           std::string("solved ") + (all_solved ? "12/12" : "NOT ALL") +
               ", ag-only |dGini|<0.005 " + (ag_gini ? "yes" : "NO") +
               ", ag-only wealthless rise " + (ag_wealthless ? "yes" : "NO") +
               ", symmetric wealthless increasing " +
               (sym_increasing ? "yes" : "NO") + " reaching " +
               num(panel[1][3].d_wealthless) + ", nonag largest 80-20 drop " +
               (nonag_largest ? "yes" : "NO"));
    info("d(80-20) at 25%: ag " + num(panel[0][3].d_8020) + ", symmetric " +
         num(panel[1][3].d_8020) + ", nonag " + num(panel[2][3].d_8020) +
         "; d(wealthless) at 25%: ag " + num(panel[0][3].d_wealthless) +
         ", symmetric " + num(panel[1][3].d_wealthless));
}

// ---------------------------------------------------------------- 10
void criterion_derivatives() {
    const Preferences prefs{0.8196, 0.0564, 2.0, 0.975};
    const double p = 2.49, y = 1.3, h = 1e-6;

    const double dc_fd =
        (demand(prefs, p + h, y).c - demand(prefs, p - h, y).c) / (2.0 * h);
    const double dc_err = std::fabs(dc_fd - (-prefs.phi * prefs.f_bar)) /
                          std::fabs(prefs.phi * prefs.f_bar);
    const double df_fd =
        (demand(prefs, p + h, y).f - demand(prefs, p - h, y).f) / (2.0 * h);
    const double df_exact = -(1.0 - prefs.phi) * y / (p * p);
    const double df_err = std::fabs(df_fd - df_exact) / std::fabs(df_exact);
    const double ds_fd =
        (food_share(prefs, p + h, y) - food_share(prefs, p - h, y)) /
        (2.0 * h);
    const double ds_exact = prefs.phi * prefs.f_bar / y;
    const double ds_err = std::fabs(ds_fd - ds_exact) / ds_exact;

    const double share0 = food_share(prefs, p, y);
    auto engel_error = [&](double dp_rel) {
        const double exact =
            equivalent_variation_pe(prefs, p, y, p * (1.0 + dp_rel)) / y;
        return std::fabs(engel_approximation(share0, dp_rel) - exact);
    };
    const double r1 = engel_error(0.08) / engel_error(0.04);
    const double r2 = engel_error(0.04) / engel_error(0.02);
    const bool quadratic =
        std::fabs(r1 - 4.0) < 0.5 && std::fabs(r2 - 4.0) < 0.5;

    const bool pass =
        dc_err < 1e-6 && df_err < 1e-6 && ds_err < 1e-6 && quadratic;
    report(10, "closed-form price derivatives and Engel approximation order",
           pass,
           "dc/dp err " + num(dc_err) + ", df/dp err " + num(df_err) +
               ", dshare/dp err " + num(ds_err) + ", halving ratios " +
               num(r1) + ", " + num(r2));
}

// ---------------------------------------------------------------- 11
std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void criterion_determinism() {
    bool pass = true;
    std::string detail;
    try {
        RunConfig base = RunConfig::from_file("configs/no_damage.json");
        RunConfig alt = RunConfig::from_file("configs/baseline.json");
        const fs::path root =
            fs::temp_directory_path() / "breadline_acceptance";
        fs::remove_all(root);

        RunConfig alt_a = alt, alt_b = alt;
        alt_a.output_dir = (root / "run_a").string();
        alt_a.workers = 1;
        alt_b.output_dir = (root / "run_b").string();
        alt_b.workers = 4;
        RunConfig base_b = base;
        base_b.workers = 4;

        if (run_compare(base, alt_a) != exit_ok ||
            run_compare(base_b, alt_b) != exit_ok)
            throw Error("compare run failed");

        for (const char* name :
             {"summary.csv", "comparison.csv", "deciles.csv",
              "income_decomposition.csv", "food_share_curve.csv"}) {
            const std::string a = slurp(root / "run_a" / name);
            const std::string b = slurp(root / "run_b" / name);
            if (a.empty() || a != b) {
                pass = false;
                detail += std::string(name) + " differs; ";
            }
        }
        if (pass)
            detail = "5 report files byte-identical across worker counts";
    } catch (const std::exception& err) {
        pass = false;
        detail = err.what();
    }
    report(11, "byte-identical outputs for repeated default comparisons",
           pass, detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite: shipped default configuration (N=%d, "
                "sigma=%s, grid %d nodes)\n",
                RunConfig{}.n_states, num(RunConfig{}.sigma).c_str(),
                RunConfig{}.grid.size);

    criterion_static_block();

    // Shared full-size solves: no-damage plus the three loss sizes.
    RunConfig cfg;
    const std::vector<SteadyState> states = solve_on_shared_grid(
        cfg, {{0.0, 0.0}, {0.11, 0.0}, {0.25, 0.0}, {0.40, 0.0}});

    criterion_solver(states[0]);
    criterion_reduction();
    criterion_distribution_oracle();
    criterion_calibration();
    criterion_regional_weights();
    criterion_table2(states[0], states[2]);
    criterion_welfare_gaps(states[0], {&states[1], &states[2], &states[3]});
    criterion_sweep(cfg, states[0]);
    criterion_derivatives();
    criterion_determinism();

    std::printf("%d of 11 criteria failed\n", g_failures);
    return g_failures;
}
