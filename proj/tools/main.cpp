#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "breadline/runner.hpp"

namespace {

breadline::RunConfig load_config(const std::string& path,
                                 const std::string& output_dir, bool plot,
                                 int workers) {
    breadline::RunConfig cfg = path.empty()
                                   ? breadline::RunConfig{}
                                   : breadline::RunConfig::from_file(path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (plot) cfg.plot = true;
    if (workers > 0) cfg.workers = workers;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "breadline: steady-state analysis of food prices, savings and "
        "inequality under sectoral productivity losses"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output_dir;
    bool plot = false;
    int workers = 0;
    app.add_option("-o,--output", output_dir, "Output directory override");
    app.add_flag("--plot", plot, "Also render SVG figures");
    app.add_option("-j,--workers", workers, "Concurrent solves for sweeps");

    auto* solve = app.add_subcommand("solve", "Solve one steady state");
    std::string solve_config;
    solve->add_option("-c,--config", solve_config, "Config file (JSON)");

    auto* cmp = app.add_subcommand(
        "compare", "Compare two steady states that differ only in scenario");
    std::string base_config, alt_config;
    cmp->add_option("base", base_config, "Base scenario config")->required();
    cmp->add_option("alt", alt_config, "Alternative scenario config")->required();

    auto* sweep = app.add_subcommand(
        "sweep-allocation",
        "Inequality indicators over loss sizes and sectoral allocations");
    std::string sweep_config;
    std::vector<double> losses{0.10, 0.15, 0.20, 0.25};
    std::vector<std::string> allocations{"ag-only", "symmetric", "nonag-only"};
    sweep->add_option("-c,--config", sweep_config, "Config file (JSON)");
    sweep->add_option("--losses", losses,
                      "Loss sizes as fractions (default 0.10 0.15 0.20 0.25)");
    sweep->add_option("--allocations", allocations,
                      "Subset of: ag-only symmetric nonag-only");

    auto* cal = app.add_subcommand(
        "calibrate", "Fit preferences from segment data and pin the income spread");
    std::string cal_config, segments;
    cal->add_option("-c,--config", cal_config, "Config file (JSON)");
    cal->add_option("-d,--data", segments, "Expenditure segment CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return breadline::run_solve(
                load_config(solve_config, output_dir, plot, workers));
        if (cmp->parsed()) {
            const auto base =
                load_config(base_config, output_dir, plot, workers);
            const auto alt = load_config(alt_config, output_dir, plot, workers);
            return breadline::run_compare(base, alt);
        }
        if (sweep->parsed())
            return breadline::run_sweep(
                load_config(sweep_config, output_dir, plot, workers), losses,
                allocations);
        if (cal->parsed())
            return breadline::run_calibrate(
                segments, load_config(cal_config, output_dir, plot, workers));
    } catch (const breadline::IoError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return breadline::exit_config;
    } catch (const breadline::ParameterError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return breadline::exit_config;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return breadline::exit_solver;
    }
    return breadline::exit_usage;
}
