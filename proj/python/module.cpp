#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "breadline/analysis.hpp"
#include "breadline/calibration.hpp"
#include "breadline/config.hpp"
#include "breadline/runner.hpp"

namespace py = pybind11;
using namespace breadline;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null: return py::none();
        case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items())
                out[py::str(key)] = json_to_py(value);
            return out;
        }
        default: return py::none();
    }
}

RunConfig config_from_arg(const py::object& config) {
    if (config.is_none()) return RunConfig{};
    const std::string dumped =
        py::str(py::module_::import("json").attr("dumps")(config));
    return RunConfig::from_json(nlohmann::json::parse(dumped));
}

nlohmann::json summary_json(const SteadyState& ss) {
    nlohmann::json j;
    j["prices"] = {{"r", ss.prices.r}, {"w", ss.prices.w}, {"p", ss.prices.p}};
    j["capital"] = ss.agg.capital;
    j["labor"] = ss.agg.labor;
    j["consumption"] = ss.agg.consumption;
    j["food"] = ss.agg.food;
    j["expenditures"] = ss.agg.expenditures;
    j["mean_food_share"] = ss.agg.mean_food_share;
    j["y_food"] = ss.sectors.y_f;
    j["y_nonfood"] = ss.sectors.y_c;
    j["exp_8020"] = expenditure_ratio_8020(ss);
    j["food_8020"] = food_expenditure_ratio_8020(ss);
    j["wealth_gini"] = wealth_gini(ss.dist, ss.grid).value;
    j["wealthless_share"] = wealthless_share(ss.dist, ss.grid);
    j["diagnostics"] = {{"euler_max", ss.diag.euler_max},
                        {"clearing_residual", ss.diag.clearing_residual},
                        {"walras_residual", ss.diag.walras_residual},
                        {"bisect_iterations", ss.diag.bisect_iterations}};
    return j;
}

nlohmann::json report_json(const ComparisonReport& rep) {
    nlohmann::json j;
    j["dy_food_pct"] = rep.dy_f_pct;
    j["dy_nonfood_pct"] = rep.dy_c_pct;
    j["dcapital_pct"] = rep.dk_pct;
    j["d_food_8020"] = rep.d_food_8020;
    j["d_exp_8020"] = rep.d_exp_8020;
    j["d_mean_food_share"] = rep.d_mean_food_share;
    j["d_wealth_gini"] = rep.d_wealth_gini;
    j["d_wealthless_share"] = rep.d_wealthless;
    j["exp_8020_base"] = rep.exp_8020_base;
    j["exp_8020_alt"] = rep.exp_8020_alt;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rep.deciles) {
        rows.push_back({{"decile", row.decile},
                        {"mean_exp_base", row.mean_exp_base},
                        {"mean_exp_alt", row.mean_exp_alt},
                        {"mean_exp_alt_same_households", row.mean_exp_alt_fixed},
                        {"food_share_base", row.food_share_base},
                        {"cev_pe", row.cev_pe},
                        {"cev_ge", row.cev_ge},
                        {"welfare_gap", row.welfare_gap},
                        {"labor_delta", row.labor_delta},
                        {"capital_return_delta", row.capital_return_delta},
                        {"capital_saving_delta", row.capital_saving_delta},
                        {"total_income_delta", row.total_income_delta},
                        {"infeasible_at_pe", row.infeasible_at_pe}});
    }
    j["deciles"] = rows;
    return j;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Heterogeneous-agent steady-state model of food prices, "
              "savings and inequality under sectoral productivity losses.";

    py::register_exception<Error>(m, "ModelError");

    m.def(
        "demand",
        [](double phi, double f_bar, double eta, double beta, double p,
           double y_exp) {
            const ConsumptionBundle b = demand({phi, f_bar, eta, beta}, p, y_exp);
            return py::make_tuple(b.c, b.f);
        },
        py::arg("phi"), py::arg("f_bar"), py::arg("eta"), py::arg("beta"),
        py::arg("p"), py::arg("y_exp"),
        "Optimal (non-food, food) split of expenditures at food price p.");

    m.def(
        "food_share",
        [](double phi, double f_bar, double eta, double beta, double p,
           double y_exp) {
            return food_share({phi, f_bar, eta, beta}, p, y_exp);
        },
        py::arg("phi"), py::arg("f_bar"), py::arg("eta"), py::arg("beta"),
        py::arg("p"), py::arg("y_exp"));

    m.def(
        "indirect_utility",
        [](double phi, double f_bar, double eta, double beta, double p,
           double y_exp) {
            return indirect_utility({phi, f_bar, eta, beta}, p, y_exp);
        },
        py::arg("phi"), py::arg("f_bar"), py::arg("eta"), py::arg("beta"),
        py::arg("p"), py::arg("y_exp"));

    m.def(
        "equivalent_variation",
        [](double phi, double f_bar, double eta, double beta, double p0,
           double y0, double p1, double y1) {
            return equivalent_variation({phi, f_bar, eta, beta}, p0, y0, p1, y1);
        },
        py::arg("phi"), py::arg("f_bar"), py::arg("eta"), py::arg("beta"),
        py::arg("p0"), py::arg("y0"), py::arg("p1"), py::arg("y1"),
        "Income adjustment at baseline prices replicating the new utility; "
        "negative for welfare losses.");

    m.def("engel_approximation", &engel_approximation, py::arg("food_share"),
          py::arg("dp_relative"));

    m.def(
        "discretize_ar1",
        [](double rho, double sigma, int n_states) {
            const IncomeProcess proc = discretize_ar1(rho, sigma, n_states);
            py::dict out;
            out["levels"] = proc.levels;
            py::list rows;
            for (int i = 0; i < proc.n_states; ++i) {
                py::list row;
                for (int j = 0; j < proc.n_states; ++j)
                    row.append(proc.prob(i, j));
                rows.append(row);
            }
            out["transition"] = rows;
            out["stationary"] = proc.stationary;
            return out;
        },
        py::arg("rho"), py::arg("sigma"), py::arg("n_states") = 7,
        "Rouwenhorst discretization with unit-mean levels.");

    m.def(
        "weighted_damage",
        [](const std::vector<std::pair<double, double>>& loss_share) {
            return weighted_damage(loss_share);
        },
        py::arg("loss_share"),
        "Population-weighted average loss from (loss, share) pairs.");

    m.def("gini", &gini, py::arg("values"), py::arg("masses"));
    m.def("ratio_8020", &ratio_8020, py::arg("values"), py::arg("masses"));

    m.def(
        "solve_steady_state",
        [](const py::object& config) {
            const RunConfig cfg = config_from_arg(config);
            const SteadyState ss = solve_from_config(cfg);
            return json_to_py(summary_json(ss));
        },
        py::arg("config") = py::none(),
        "Solve one steady state from a config dict (shipped defaults when "
        "omitted) and return its summary.");

    m.def(
        "compare_scenarios",
        [](const py::object& base_config, const py::object& alt_config) {
            const RunConfig base_cfg = config_from_arg(base_config);
            const RunConfig alt_cfg = config_from_arg(alt_config);
            if (base_cfg.model_json() != alt_cfg.model_json())
                throw ParameterError(
                    "configs must differ only in the scenario block");
            const std::vector<SteadyState> states = solve_on_shared_grid(
                base_cfg, {base_cfg.scenario, alt_cfg.scenario});
            return json_to_py(report_json(compare(states[0], states[1])));
        },
        py::arg("base_config"), py::arg("alt_config"),
        "Solve both scenarios on shared primitives and return the "
        "comparison report.");
}
