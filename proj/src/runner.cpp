#include "breadline/runner.hpp"

#include <cmath>
#include <filesystem>
#include <atomic>
#include <optional>
#include <future>
#include <iostream>
#include <sstream>

#include "breadline/analysis.hpp"
#include "breadline/calibration.hpp"
#include "breadline/csv.hpp"
#include "breadline/svg.hpp"

namespace breadline {

namespace fs = std::filesystem;

namespace {

void write_error_record(const std::string& dir, int code,
                        const std::string& type, const std::string& message) {
    try {
        fs::create_directories(dir);
        nlohmann::json j{{"exit_code", code}, {"error", type}, {"message", message}};
        write_file_atomic(dir + "/error.json", j.dump(2) + "\n");
    } catch (...) {
        // The record is best effort; the exit code still reports the failure.
    }
}

int classify(const std::exception& err) {
    if (dynamic_cast<const SubsistenceError*>(&err)) return exit_infeasible;
    if (dynamic_cast<const BracketError*>(&err)) return exit_solver;
    if (dynamic_cast<const ConvergenceError*>(&err)) return exit_solver;
    if (dynamic_cast<const IoError*>(&err)) return exit_io;
    if (dynamic_cast<const ParameterError*>(&err)) return exit_config;
    return exit_solver;
}

const char* error_name(int code) {
    switch (code) {
        case exit_config: return "config";
        case exit_solver: return "solver";
        case exit_infeasible: return "infeasible";
        case exit_io: return "io";
        default: return "error";
    }
}

struct SummaryRow {
    std::string scenario;
    const SteadyState* state;
};

void write_summary_csv(const std::string& path, const std::string& comment,
                       const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    CsvWriter csv(out, comment,
                  {"scenario", "xi_f", "xi_c", "r", "w", "p", "capital", "labor",
                   "y_food", "y_nonfood", "consumption", "food",
                   "mean_expenditure", "mean_food_share", "exp_8020",
                   "food_8020", "wealth_gini", "wealthless_share", "euler_max",
                   "clearing_residual", "walras_residual"});
    for (const auto& row : rows) {
        const SteadyState& ss = *row.state;
        csv.cell(row.scenario);
        csv.cell(ss.scenario.xi_f);
        csv.cell(ss.scenario.xi_c);
        csv.cell(ss.prices.r);
        csv.cell(ss.prices.w);
        csv.cell(ss.prices.p);
        csv.cell(ss.agg.capital);
        csv.cell(ss.agg.labor);
        csv.cell(ss.sectors.y_f);
        csv.cell(ss.sectors.y_c);
        csv.cell(ss.agg.consumption);
        csv.cell(ss.agg.food);
        csv.cell(ss.agg.expenditures);
        csv.cell(ss.agg.mean_food_share);
        csv.cell(expenditure_ratio_8020(ss));
        csv.cell(food_expenditure_ratio_8020(ss));
        csv.cell(wealth_gini(ss.dist, ss.grid).value);
        csv.cell(wealthless_share(ss.dist, ss.grid));
        csv.cell(ss.diag.euler_max);
        csv.cell(ss.diag.clearing_residual);
        csv.cell(ss.diag.walras_residual);
        csv.end_row();
    }
    write_file_atomic(path, out.str());
}

void write_comparison_csv(const std::string& path, const std::string& comment,
                          const ComparisonReport& rep) {
    std::ostringstream out;
    CsvWriter csv(out, comment,
                  {"food_8020_base", "food_8020_alt", "d_food_8020",
                   "mean_food_share_base", "mean_food_share_alt",
                   "d_mean_food_share", "exp_8020_base", "exp_8020_alt",
                   "d_exp_8020", "wealth_gini_base", "wealth_gini_alt",
                   "d_wealth_gini", "wealthless_base", "wealthless_alt",
                   "d_wealthless", "dy_food_pct", "dy_nonfood_pct",
                   "dcapital_pct", "r_base", "r_alt", "w_base", "w_alt",
                   "p_base", "p_alt"});
    csv.cell(rep.food_8020_base);
    csv.cell(rep.food_8020_alt);
    csv.cell(rep.d_food_8020);
    csv.cell(rep.mean_food_share_base);
    csv.cell(rep.mean_food_share_alt);
    csv.cell(rep.d_mean_food_share);
    csv.cell(rep.exp_8020_base);
    csv.cell(rep.exp_8020_alt);
    csv.cell(rep.d_exp_8020);
    csv.cell(rep.wealth_gini_base);
    csv.cell(rep.wealth_gini_alt);
    csv.cell(rep.d_wealth_gini);
    csv.cell(rep.wealthless_base);
    csv.cell(rep.wealthless_alt);
    csv.cell(rep.d_wealthless);
    csv.cell(rep.dy_f_pct);
    csv.cell(rep.dy_c_pct);
    csv.cell(rep.dk_pct);
    csv.cell(rep.r_base);
    csv.cell(rep.r_alt);
    csv.cell(rep.w_base);
    csv.cell(rep.w_alt);
    csv.cell(rep.p_base);
    csv.cell(rep.p_alt);
    csv.end_row();
    write_file_atomic(path, out.str());
}

void write_deciles_csv(const std::string& path, const std::string& comment,
                       const ComparisonReport& rep) {
    std::ostringstream out;
    CsvWriter csv(out, comment,
                  {"decile", "mean_exp_base", "mean_exp_alt",
                   "mean_exp_alt_same_households", "food_share_base", "cev_pe",
                   "cev_ge", "welfare_gap", "infeasible_at_pe"});
    for (const auto& row : rep.deciles) {
        csv.cell(row.decile);
        csv.cell(row.mean_exp_base);
        csv.cell(row.mean_exp_alt);
        csv.cell(row.mean_exp_alt_fixed);
        csv.cell(row.food_share_base);
        csv.cell(row.cev_pe);
        csv.cell(row.cev_ge);
        csv.cell(row.welfare_gap);
        csv.cell(row.infeasible_at_pe ? 1 : 0);
        csv.end_row();
    }
    write_file_atomic(path, out.str());
}

void write_decomposition_csv(const std::string& path, const std::string& comment,
                             const ComparisonReport& rep) {
    std::ostringstream out;
    CsvWriter csv(out, comment,
                  {"decile", "labor_delta", "capital_return_delta",
                   "capital_saving_delta", "total_income_delta"});
    for (const auto& row : rep.deciles) {
        csv.cell(row.decile);
        csv.cell(row.labor_delta);
        csv.cell(row.capital_return_delta);
        csv.cell(row.capital_saving_delta);
        csv.cell(row.total_income_delta);
        csv.end_row();
    }
    write_file_atomic(path, out.str());
}

void write_share_curve_csv(const std::string& path, const std::string& comment,
                           const std::vector<SharePoint>& curve) {
    std::ostringstream out;
    CsvWriter csv(out, comment,
                  {"normalized_expenditure", "food_share_base",
                   "nonfood_share_base", "food_share_alt", "nonfood_share_alt"});
    for (const auto& pt : curve) {
        csv.cell(pt.normalized_expenditure);
        csv.cell(pt.food_share_base);
        csv.cell(1.0 - pt.food_share_base);
        csv.cell(pt.food_share_alt);
        csv.cell(1.0 - pt.food_share_alt);
        csv.end_row();
    }
    write_file_atomic(path, out.str());
}

}  // namespace

AssetGrid comparison_grid(const RunConfig& cfg, int doublings) {
    if (cfg.grid.mode != BorrowingMode::zero)
        throw ParameterError(
            "cross-scenario comparisons require borrowing_mode zero so the "
            "asset grid is shared; the natural limit depends on prices");
    double a_max = cfg.grid.a_max;
    if (!(a_max > 0.0)) {
        const Technology tech = cfg.technology();
        const double rate_hi = 1.0 / cfg.beta - 1.0 - 1e-5;
        const double k =
            std::pow(tech.a_c * tech.alpha / (rate_hi + tech.delta),
                     1.0 / (1.0 - tech.alpha));
        a_max = 60.0 * prices_from_capital(tech, k).w;
    }
    a_max *= std::pow(2.0, doublings);
    return AssetGrid::exponential(0.0, a_max, cfg.grid.size, cfg.grid.curvature);
}

std::vector<SteadyState> solve_on_shared_grid(
    const RunConfig& model_cfg, const std::vector<ClimateScenario>& scenarios) {
    const IncomeProcess income = model_cfg.income();
    for (int doublings = 0;; ++doublings) {
        const AssetGrid grid = comparison_grid(model_cfg, doublings);
        try {
            std::vector<SteadyState> states;
            states.reserve(scenarios.size());
            for (const ClimateScenario& scenario : scenarios)
                states.push_back(solve_steady_state(
                    model_cfg.preferences(), model_cfg.technology(), scenario,
                    income, model_cfg.grid, model_cfg.solver, &grid));
            return states;
        } catch (const GridTailError&) {
            if (doublings >= model_cfg.solver.max_grid_doublings) throw;
        }
    }
}

SteadyState solve_from_config(const RunConfig& cfg, const AssetGrid* grid) {
    return solve_steady_state(cfg.preferences(), cfg.technology(), cfg.scenario,
                              cfg.income(), cfg.grid, cfg.solver, grid);
}

ClimateScenario allocation_scenario(const std::string& allocation, double loss,
                                    double nonfood_output_share) {
    if (!(loss >= 0.0 && loss < 1.0))
        throw ParameterError("loss must lie in [0,1)");
    if (allocation == "ag-only") return {loss, 0.0};
    if (allocation == "symmetric") return {loss, loss};
    if (allocation == "nonag-only")
        // Non-agricultural losses are scaled by the initial non-food
        // output share so allocations are comparable.
        return {0.0, loss * nonfood_output_share};
    throw ParameterError("unknown allocation '" + allocation +
                         "'; expected ag-only, symmetric or nonag-only");
}

int run_solve(const RunConfig& cfg) {
    const std::string dir = cfg.output_dir;
    try {
        fs::create_directories(dir);
        const SteadyState state = solve_from_config(cfg);
        write_snapshot(state, dir + "/steady_state.json");
        const std::string comment =
            "config_hash=" + cfg.hash() + " units=model(numeraire=non-food)";
        write_summary_csv(dir + "/summary.csv", comment,
                          {{cfg.scenario_name, &state}});

        const bool ok = state.diag.clearing_residual <= cfg.solver.clearing_tol &&
                        state.diag.walras_residual <= 1e-4 &&
                        state.diag.euler_max <= 1e-6 &&
                        state.diag.top_node_mass <= cfg.solver.top_mass_limit;
        if (!ok) {
            write_error_record(dir, exit_solver, "diagnostics",
                               "solved state violates an equilibrium invariant");
            return exit_solver;
        }
        std::cout << "solved scenario " << cfg.scenario_name
                  << ": r=" << format_number(state.prices.r)
                  << " w=" << format_number(state.prices.w)
                  << " p=" << format_number(state.prices.p)
                  << " K=" << format_number(state.agg.capital) << "\n";
        return exit_ok;
    } catch (const std::exception& err) {
        const int code = classify(err);
        write_error_record(dir, code, error_name(code), err.what());
        std::cerr << "error: " << err.what() << "\n";
        return code;
    }
}

int run_compare(const RunConfig& base_cfg, const RunConfig& alt_cfg) {
    const std::string dir = alt_cfg.output_dir;
    try {
        if (base_cfg.model_json() != alt_cfg.model_json())
            throw ParameterError(
                "compare requires configs that differ only in the scenario "
                "block");
        fs::create_directories(dir);

        const std::vector<SteadyState> states = solve_on_shared_grid(
            base_cfg, {base_cfg.scenario, alt_cfg.scenario});
        const SteadyState& base = states[0];
        const SteadyState& alt = states[1];

        const ComparisonReport rep = compare(base, alt);
        const std::vector<SharePoint> curve = food_share_curve(base, alt);

        const std::string comment = "config_hash_base=" + base_cfg.hash() +
                                    " config_hash_alt=" + alt_cfg.hash() +
                                    " units=model(numeraire=non-food)";
        write_summary_csv(dir + "/summary.csv", comment,
                          {{base_cfg.scenario_name, &base},
                           {alt_cfg.scenario_name, &alt}});
        write_comparison_csv(dir + "/comparison.csv", comment, rep);
        write_deciles_csv(dir + "/deciles.csv", comment, rep);
        write_decomposition_csv(dir + "/income_decomposition.csv", comment, rep);
        write_share_curve_csv(dir + "/food_share_curve.csv", comment, curve);

        if (alt_cfg.plot) {
            SvgSeries base_s{"base (" + base_cfg.scenario_name + ")", {}, {},
                             "#1f77b4", false};
            SvgSeries alt_s{"alt (" + alt_cfg.scenario_name + ")", {}, {},
                            "#d62728", true};
            for (const auto& pt : curve) {
                base_s.x.push_back(pt.normalized_expenditure);
                base_s.y.push_back(pt.food_share_base);
                alt_s.x.push_back(pt.normalized_expenditure);
                alt_s.y.push_back(pt.food_share_alt);
            }
            write_file_atomic(
                dir + "/food_share_curve.svg",
                svg_line_chart("Food expenditure share across the distribution",
                               "expenditures / base mean", "food share",
                               {base_s, alt_s}));

            std::vector<std::string> cats;
            SvgSeries pe{"CEV direct", {}, {}, "#1f77b4", false};
            SvgSeries ge{"CEV equilibrium", {}, {}, "#d62728", false};
            for (const auto& row : rep.deciles) {
                cats.push_back(std::to_string(row.decile));
                pe.y.push_back(row.cev_pe);
                ge.y.push_back(row.cev_ge);
            }
            write_file_atomic(dir + "/welfare_deciles.svg",
                              svg_bar_chart("Welfare change by expenditure decile",
                                            cats, {pe, ge}));

            SvgSeries labor{"labor income", {}, {}, "#2ca02c", false};
            SvgSeries cap_return{"assets x dr", {}, {}, "#1f77b4", false};
            SvgSeries cap_saving{"r x dassets", {}, {}, "#d62728", false};
            for (const auto& row : rep.deciles) {
                labor.y.push_back(row.labor_delta);
                cap_return.y.push_back(row.capital_return_delta);
                cap_saving.y.push_back(row.capital_saving_delta);
            }
            write_file_atomic(
                dir + "/income_decomposition.svg",
                svg_bar_chart("Income change decomposition by decile", cats,
                              {labor, cap_return, cap_saving}));
        }
        std::cout << "compared " << base_cfg.scenario_name << " -> "
                  << alt_cfg.scenario_name
                  << ": d(exp 80-20)=" << format_number(rep.d_exp_8020)
                  << " dK=" << format_number(rep.dk_pct) << "\n";
        return exit_ok;
    } catch (const std::exception& err) {
        const int code = classify(err);
        write_error_record(dir, code, error_name(code), err.what());
        std::cerr << "error: " << err.what() << "\n";
        return code;
    }
}

namespace {

struct SweepCell {
    double loss = 0.0;
    std::string allocation;
    ClimateScenario scenario;
    bool solved = false;
    std::string note;
    double wealth_gini = 0.0, d_wealth_gini = 0.0;
    double exp_8020 = 0.0, d_exp_8020 = 0.0;
    double wealthless = 0.0, d_wealthless = 0.0;
};

}  // namespace

int run_sweep(const RunConfig& cfg, const std::vector<double>& losses,
              const std::vector<std::string>& allocations) {
    const std::string dir = cfg.output_dir;
    try {
        fs::create_directories(dir);
        const IncomeProcess income = cfg.income();

        std::vector<SweepCell> cells;
        // Cells share one grid with the no-damage base; when any state
        // parks mass in the top node, the whole panel re-solves on a
        // doubled grid so comparisons stay well-defined.
        for (int doublings = 0;; ++doublings) {
            cells.clear();
            const AssetGrid grid = comparison_grid(cfg, doublings);
            std::optional<SteadyState> base_solve;
            try {
                base_solve = solve_steady_state(
                    cfg.preferences(), cfg.technology(), {0.0, 0.0}, income,
                    cfg.grid, cfg.solver, &grid);
            } catch (const GridTailError&) {
                if (doublings >= cfg.solver.max_grid_doublings) throw;
                continue;
            }
            const SteadyState& base = *base_solve;

            const double nonfood_share =
                base.sectors.y_c /
                (base.sectors.y_c + base.prices.p * base.sectors.y_f);
            const double gini_base = wealth_gini(base.dist, base.grid).value;
            const double r8020_base = expenditure_ratio_8020(base);
            const double wealthless_base = wealthless_share(base.dist, base.grid);

            for (double loss : losses)
                for (const auto& alloc : allocations) {
                    SweepCell cell;
                    cell.loss = loss;
                    cell.allocation = alloc;
                    cell.scenario =
                        allocation_scenario(alloc, loss, nonfood_share);
                    cells.push_back(std::move(cell));
                }

            std::atomic<bool> need_larger_grid{false};
            auto solve_cell = [&](SweepCell& cell) {
                try {
                    const SteadyState alt = solve_steady_state(
                        cfg.preferences(), cfg.technology(), cell.scenario,
                        income, cfg.grid, cfg.solver, &grid);
                    cell.wealth_gini = wealth_gini(alt.dist, alt.grid).value;
                    cell.exp_8020 = expenditure_ratio_8020(alt);
                    cell.wealthless = wealthless_share(alt.dist, alt.grid);
                    cell.d_wealth_gini = cell.wealth_gini - gini_base;
                    cell.d_exp_8020 = cell.exp_8020 - r8020_base;
                    cell.d_wealthless = cell.wealthless - wealthless_base;
                    cell.solved = true;
                } catch (const GridTailError& err) {
                    need_larger_grid = true;
                    cell.note = err.what();
                } catch (const std::exception& err) {
                    cell.note = err.what();
                }
            };

            const int workers = std::max(1, cfg.workers);
            for (size_t start = 0; start < cells.size();
                 start += static_cast<size_t>(workers)) {
                const size_t end =
                    std::min(cells.size(), start + static_cast<size_t>(workers));
                std::vector<std::future<void>> batch;
                for (size_t c = start; c < end; ++c)
                    batch.push_back(std::async(std::launch::async, solve_cell,
                                               std::ref(cells[c])));
                for (auto& f : batch) f.get();
            }
            if (!need_larger_grid) break;
            if (doublings >= cfg.solver.max_grid_doublings)
                throw GridTailError("sweep grid still too small after " +
                                    std::to_string(doublings) + " doublings");
        }

        const std::string comment =
            "config_hash=" + cfg.hash() + " units=model(numeraire=non-food)";
        std::ostringstream out;
        CsvWriter csv(out, comment,
                      {"loss", "allocation", "xi_f", "xi_c", "status",
                       "wealth_gini", "d_wealth_gini", "exp_8020", "d_exp_8020",
                       "wealthless_share", "d_wealthless_share", "note"});
        for (const auto& cell : cells) {
            csv.cell(cell.loss);
            csv.cell(cell.allocation);
            csv.cell(cell.scenario.xi_f);
            csv.cell(cell.scenario.xi_c);
            csv.cell(std::string(cell.solved ? "ok" : "failed"));
            csv.cell(cell.wealth_gini);
            csv.cell(cell.d_wealth_gini);
            csv.cell(cell.exp_8020);
            csv.cell(cell.d_exp_8020);
            csv.cell(cell.wealthless);
            csv.cell(cell.d_wealthless);
            csv.cell(cell.note.empty() ? std::string("-") : cell.note);
            csv.end_row();
        }
        write_file_atomic(dir + "/sweep.csv", out.str());

        if (cfg.plot) {
            std::vector<std::string> cats;
            for (double loss : losses)
                cats.push_back(format_number(loss * 100.0) + "%");
            const std::vector<std::string> colors{"#1f77b4", "#d62728", "#2ca02c"};
            auto panel = [&](const char* field, auto getter) {
                std::vector<SvgSeries> series;
                for (size_t a = 0; a < allocations.size(); ++a) {
                    SvgSeries s{allocations[a], {}, {},
                                colors[a % colors.size()], false};
                    for (const auto& cell : cells)
                        if (cell.allocation == allocations[a] && cell.solved)
                            s.y.push_back(getter(cell));
                    series.push_back(std::move(s));
                }
                write_file_atomic(dir + "/sweep_" + field + ".svg",
                                  svg_bar_chart(std::string("Change in ") + field,
                                                cats, series));
            };
            panel("wealth_gini", [](const SweepCell& c) { return c.d_wealth_gini; });
            panel("exp_8020", [](const SweepCell& c) { return c.d_exp_8020; });
            panel("wealthless_share",
                  [](const SweepCell& c) { return c.d_wealthless; });
        }

        int failures = 0;
        for (const auto& cell : cells)
            if (!cell.solved) ++failures;
        std::cout << "sweep finished: " << cells.size() - failures << "/"
                  << cells.size() << " cells solved\n";
        return exit_ok;
    } catch (const std::exception& err) {
        const int code = classify(err);
        write_error_record(dir, code, error_name(code), err.what());
        std::cerr << "error: " << err.what() << "\n";
        return code;
    }
}

int run_calibrate(const std::string& segments_path, const RunConfig& cfg) {
    const std::string dir = cfg.output_dir;
    try {
        fs::create_directories(dir);

        RunConfig fitted = cfg;
        PreferenceFit fit;
        bool have_fit = false;
        if (!segments_path.empty()) {
            const auto segments = load_segments_file(segments_path);
            fit = estimate_preferences(segments);
            fitted.phi = fit.phi;
            fitted.f_bar = fit.f_bar;
            have_fit = true;
        }

        fitted.scenario = {0.0, 0.0};
        fitted.scenario_name = "no-damage";

        auto model_ratio = [&](const IncomeProcess& income) {
            const SteadyState ss = solve_steady_state(
                fitted.preferences(), fitted.technology(), fitted.scenario,
                income, fitted.grid, fitted.solver, nullptr);
            return expenditure_ratio_8020(ss);
        };
        // An unreachable target is a documented outcome: the report still
        // carries the preference fit and the achieved range.
        CalibrationResult cal;
        std::string spread_error;
        try {
            cal = calibrate_spread(cfg.target_8020, cfg.rho, cfg.n_states,
                                   model_ratio, cfg.sigma_lo, cfg.sigma_hi);
        } catch (const BracketError& err) {
            spread_error = err.what();
            cal.target_ratio = cfg.target_8020;
        }

        const std::string comment =
            "config_hash=" + cfg.hash() + " units=model(numeraire=non-food)";
        {
            std::ostringstream out;
            CsvWriter csv(out, comment,
                          {"phi", "f_bar", "intercept", "slope", "se_intercept",
                           "se_slope", "r_squared", "sigma", "achieved_8020",
                           "target_8020", "evaluations"});
            csv.cell(fitted.phi);
            csv.cell(fitted.f_bar);
            csv.cell(have_fit ? fit.intercept : 1.0 - fitted.phi);
            csv.cell(have_fit ? fit.slope : 0.0);
            csv.cell(have_fit ? fit.se_intercept : 0.0);
            csv.cell(have_fit ? fit.se_slope : 0.0);
            csv.cell(have_fit ? fit.r_squared : 0.0);
            csv.cell(cal.sigma);
            csv.cell(cal.achieved_ratio);
            csv.cell(cal.target_ratio);
            csv.cell(static_cast<int>(cal.trace.size()));
            csv.end_row();
            write_file_atomic(dir + "/calibration_report.csv", out.str());
        }
        {
            std::ostringstream out;
            out << "calibration report (config " << cfg.hash() << ")\n\n";
            if (have_fit) {
                out << "preference fit over " << fit.n_segments
                    << " expenditure segments (weighted least squares of the "
                       "food share on 1/expenditures):\n"
                    << "  intercept " << format_number(fit.intercept) << " (se "
                    << format_number(fit.se_intercept) << ")\n"
                    << "  slope     " << format_number(fit.slope) << " (se "
                    << format_number(fit.se_slope) << ")\n"
                    << "  r^2       " << format_number(fit.r_squared) << "\n"
                    << "  phi   = " << format_number(fit.phi) << "\n"
                    << "  f_bar = " << format_number(fit.f_bar)
                    << " (model units, conversion factor "
                    << format_number(fit.mean_expenditure) << ")\n\n";
            } else {
                out << "no segment data given; preferences kept at configured "
                       "values phi="
                    << format_number(fitted.phi)
                    << ", f_bar=" << format_number(fitted.f_bar) << "\n\n";
            }
            out << "income spread calibration to the expenditure 80-20 target "
                << format_number(cal.target_ratio) << ":\n";
            if (spread_error.empty()) {
                out << "  sigma    = " << format_number(cal.sigma) << "\n"
                    << "  achieved = " << format_number(cal.achieved_ratio)
                    << "\n"
                    << "  evaluations:\n";
                for (const auto& pt : cal.trace)
                    out << "    sigma " << format_number(pt.sigma) << " -> "
                        << (pt.solved ? format_number(pt.ratio)
                                      : "failed: " + pt.note)
                        << "\n";
            } else {
                out << "  " << spread_error << "\n";
            }
            write_file_atomic(dir + "/calibration_report.txt", out.str());
        }
        if (!spread_error.empty()) {
            write_error_record(dir, exit_solver, "solver", spread_error);
            std::cerr << "error: " << spread_error << "\n";
            return exit_solver;
        }
        std::cout << "calibrated sigma=" << format_number(cal.sigma)
                  << " achieved 80-20=" << format_number(cal.achieved_ratio)
                  << "\n";
        return exit_ok;
    } catch (const std::exception& err) {
        const int code = classify(err);
        write_error_record(dir, code, error_name(code), err.what());
        std::cerr << "error: " << err.what() << "\n";
        return code;
    }
}

}  // namespace breadline
