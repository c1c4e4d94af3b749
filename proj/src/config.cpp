#include "breadline/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace breadline {

using nlohmann::json;

ClimateScenario named_scenario(const std::string& name) {
    if (name == "no-damage") return {0.0, 0.0};
    if (name == "baseline") return {0.25, 0.0};
    if (name == "optimistic") return {0.11, 0.0};
    if (name == "pessimistic") return {0.40, 0.0};
    throw ParameterError("unknown scenario name '" + name +
                         "'; expected no-damage, baseline, optimistic or "
                         "pessimistic");
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

void check_keys(const json& j, const std::string& block,
                const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw IoError("unknown key '" + key + "' in config block '" +
                          block + "'");
}

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw IoError(std::string("config key '") + key + "' must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw IoError(std::string("config key '") + key + "' must be an integer");
    return j[key].get<int>();
}

}  // namespace

json RunConfig::model_json() const {
    json j;
    j["preferences"] = {{"phi", phi}, {"f_bar", f_bar}, {"eta", eta}, {"beta", beta}};
    j["technology"] = {{"alpha", alpha}, {"delta", delta}, {"a_c", a_c}, {"g_apg", g_apg}};
    j["income"] = {{"rho", rho}, {"sigma", sigma}, {"n_states", n_states}};
    j["grid"] = {{"size", grid.size},
                 {"a_max", grid.a_max},
                 {"curvature", grid.curvature},
                 {"borrowing_mode",
                  grid.mode == BorrowingMode::zero ? "zero" : "natural"}};
    j["solver"] = {{"egm_tol", solver.egm_tol},
                   {"egm_max_iter", solver.egm_max_iter},
                   {"dist_tol", solver.dist_tol},
                   {"dist_max_iter", solver.dist_max_iter},
                   {"clearing_tol", solver.clearing_tol},
                   {"bisect_max_iter", solver.bisect_max_iter},
                   {"top_mass_limit", solver.top_mass_limit},
                   {"max_grid_doublings", solver.max_grid_doublings}};
    return j;
}

json RunConfig::to_json() const {
    json j = model_json();
    if (scenario_name.rfind("custom(", 0) == 0)
        j["scenario"] = {{"xi_f", scenario.xi_f}, {"xi_c", scenario.xi_c}};
    else
        j["scenario"] = {{"name", scenario_name}};
    j["output"] = {{"dir", output_dir}, {"plot", plot}, {"workers", workers}};
    j["seed"] = seed;
    j["calibration"] = {{"target_8020", target_8020},
                        {"sigma_lo", sigma_lo},
                        {"sigma_hi", sigma_hi}};
    return j;
}

RunConfig RunConfig::from_json(const json& j) {
    if (!j.is_object()) throw IoError("config root must be a JSON object");
    check_keys(j, "root",
               {"preferences", "technology", "income", "grid", "scenario",
                "solver", "output", "seed", "calibration"});
    RunConfig cfg;

    if (j.contains("preferences")) {
        const json& b = j["preferences"];
        check_keys(b, "preferences", {"phi", "f_bar", "eta", "beta"});
        cfg.phi = get_num(b, "phi", cfg.phi);
        cfg.f_bar = get_num(b, "f_bar", cfg.f_bar);
        cfg.eta = get_num(b, "eta", cfg.eta);
        cfg.beta = get_num(b, "beta", cfg.beta);
    }
    if (j.contains("technology")) {
        const json& b = j["technology"];
        check_keys(b, "technology", {"alpha", "delta", "a_c", "g_apg"});
        cfg.alpha = get_num(b, "alpha", cfg.alpha);
        cfg.delta = get_num(b, "delta", cfg.delta);
        cfg.a_c = get_num(b, "a_c", cfg.a_c);
        cfg.g_apg = get_num(b, "g_apg", cfg.g_apg);
    }
    if (j.contains("income")) {
        const json& b = j["income"];
        check_keys(b, "income", {"rho", "sigma", "n_states"});
        cfg.rho = get_num(b, "rho", cfg.rho);
        cfg.sigma = get_num(b, "sigma", cfg.sigma);
        cfg.n_states = get_int(b, "n_states", cfg.n_states);
    }
    if (j.contains("grid")) {
        const json& b = j["grid"];
        check_keys(b, "grid", {"size", "a_max", "curvature", "borrowing_mode"});
        cfg.grid.size = get_int(b, "size", cfg.grid.size);
        cfg.grid.a_max = get_num(b, "a_max", cfg.grid.a_max);
        cfg.grid.curvature = get_num(b, "curvature", cfg.grid.curvature);
        if (b.contains("borrowing_mode")) {
            const std::string mode = b["borrowing_mode"].get<std::string>();
            if (mode == "zero")
                cfg.grid.mode = BorrowingMode::zero;
            else if (mode == "natural")
                cfg.grid.mode = BorrowingMode::natural;
            else
                throw IoError("borrowing_mode must be 'zero' or 'natural'");
        }
    }
    if (j.contains("scenario")) {
        const json& b = j["scenario"];
        check_keys(b, "scenario", {"name", "xi_f", "xi_c"});
        const bool named = b.contains("name");
        const bool explicit_loss = b.contains("xi_f") || b.contains("xi_c");
        if (named && explicit_loss)
            throw IoError("scenario block must set either a name or explicit "
                          "losses, not both");
        if (named) {
            cfg.scenario_name = b["name"].get<std::string>();
            cfg.scenario = named_scenario(cfg.scenario_name);
        } else {
            cfg.scenario.xi_f = get_num(b, "xi_f", 0.0);
            cfg.scenario.xi_c = get_num(b, "xi_c", 0.0);
            std::ostringstream label;
            label << "custom(xi_f=" << cfg.scenario.xi_f
                  << ",xi_c=" << cfg.scenario.xi_c << ")";
            cfg.scenario_name = label.str();
        }
    }
    if (j.contains("solver")) {
        const json& b = j["solver"];
        check_keys(b, "solver",
                   {"egm_tol", "egm_max_iter", "dist_tol", "dist_max_iter",
                    "clearing_tol", "bisect_max_iter", "top_mass_limit",
                    "max_grid_doublings"});
        cfg.solver.egm_tol = get_num(b, "egm_tol", cfg.solver.egm_tol);
        cfg.solver.egm_max_iter = get_int(b, "egm_max_iter", cfg.solver.egm_max_iter);
        cfg.solver.dist_tol = get_num(b, "dist_tol", cfg.solver.dist_tol);
        cfg.solver.dist_max_iter =
            get_int(b, "dist_max_iter", cfg.solver.dist_max_iter);
        cfg.solver.clearing_tol = get_num(b, "clearing_tol", cfg.solver.clearing_tol);
        cfg.solver.bisect_max_iter =
            get_int(b, "bisect_max_iter", cfg.solver.bisect_max_iter);
        cfg.solver.top_mass_limit =
            get_num(b, "top_mass_limit", cfg.solver.top_mass_limit);
        cfg.solver.max_grid_doublings =
            get_int(b, "max_grid_doublings", cfg.solver.max_grid_doublings);
    }
    if (j.contains("output")) {
        const json& b = j["output"];
        check_keys(b, "output", {"dir", "plot", "workers"});
        if (b.contains("dir")) cfg.output_dir = b["dir"].get<std::string>();
        if (b.contains("plot")) cfg.plot = b["plot"].get<bool>();
        cfg.workers = get_int(b, "workers", cfg.workers);
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("calibration")) {
        const json& b = j["calibration"];
        check_keys(b, "calibration", {"target_8020", "sigma_lo", "sigma_hi"});
        cfg.target_8020 = get_num(b, "target_8020", cfg.target_8020);
        cfg.sigma_lo = get_num(b, "sigma_lo", cfg.sigma_lo);
        cfg.sigma_hi = get_num(b, "sigma_hi", cfg.sigma_hi);
    }

    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& err) {
        throw IoError("config " + path + " is not valid JSON: " + err.what());
    }
    return from_json(j);
}

std::string RunConfig::hash() const {
    // The hash identifies the economic run, not the output plumbing:
    // worker count, plot flag and output paths must not change it.
    json j = to_json();
    j.erase("output");
    std::ostringstream hex;
    hex << std::hex << fnv1a64(j.dump());
    return hex.str();
}

void RunConfig::validate() const {
    preferences();
    technology();
    if (!(rho >= 0.0 && rho < 1.0)) throw ParameterError("rho must lie in [0,1)");
    if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    if (n_states < 2) throw ParameterError("n_states must be at least 2");
    if (grid.size < 10) throw ParameterError("grid size must be at least 10");
    if (grid.a_max < 0.0) throw ParameterError("a_max must be positive or 0 (auto)");
    if (!(grid.curvature > 0.0)) throw ParameterError("grid curvature must be positive");
    if (!(scenario.xi_f >= 0.0 && scenario.xi_f < 1.0) ||
        !(scenario.xi_c >= 0.0 && scenario.xi_c < 1.0))
        throw ParameterError("scenario losses must lie in [0,1)");
    if (!(solver.egm_tol > 0.0) || !(solver.dist_tol > 0.0) ||
        !(solver.clearing_tol > 0.0))
        throw ParameterError("solver tolerances must be positive");
    if (workers < 1) throw ParameterError("workers must be at least 1");
}

}  // namespace breadline
