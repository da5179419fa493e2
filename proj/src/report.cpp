#include "demon/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace demon {

namespace {

using json = nlohmann::ordered_json;

json number(double x) {
    if (!std::isfinite(x)) return nullptr;  // JSON has no inf/nan
    return x;
}

json number_list(const std::vector<double>& xs) {
    json out = json::array();
    for (const double x : xs) out.push_back(number(x));
    return out;
}

json dims_json(const EngineScenario& scenario) {
    json reservoirs = json::array();
    for (const auto& r : scenario.reservoirs) reservoirs.push_back(r.matrix.rows());
    return json{{"system", scenario.system_dim()},
                {"reservoirs", reservoirs},
                {"ancilla", scenario.ancilla_dim()},
                {"memory", scenario.memory_dim()}};
}

json body_json(const EngineScenario& scenario, const BoundReport& report) {
    json out;
    out["label"] = scenario.label;
    out["dims"] = dims_json(scenario);
    out["temperature"] = number(scenario.system_temperature);
    out["boltzmann"] = number(scenario.boltzmann);
    out["probability_sum"] = number(report.probability_sum);
    out["energy"] = json{{"system_initial", number(report.e_s_initial)},
                         {"system_final", number(report.e_s_final)},
                         {"delta_u", number(report.delta_u_s)},
                         {"reservoir_initial", number_list(report.reservoir_energy_initial)},
                         {"reservoir_final", number_list(report.reservoir_energy_final)},
                         {"heat", number_list(report.heat)},
                         {"heat_total", number(report.heat_total)}};
    out["free_energy"] = json{{"z_initial", number(report.z_s_initial)},
                              {"z_final", number(report.z_s_final)},
                              {"f_initial", number(report.f_s_initial)},
                              {"f_final", number(report.f_s_final)},
                              {"delta_f", number(report.delta_f_s)}};
    out["entropy"] = json{{"delta_s_ancilla", number(report.delta_s_a)},
                          {"delta_s_memory", number(report.delta_s_b)},
                          {"delta_mutual_information", number(report.delta_mutual)},
                          {"measurement_entropy_gain", number(report.measurement_entropy_gain)},
                          {"chain_lhs", number(report.chain_lhs)},
                          {"chain_rhs", number(report.chain_rhs)},
                          {"klein_divergence", number(report.klein_divergence)},
                          {"marginal_ancilla_drift", number(report.marginal_a_drift)},
                          {"marginal_memory_drift", number(report.marginal_b_drift)},
                          {"branch_check_applicable", report.branch_check_applicable},
                          {"branch_identification_error",
                           number(report.branch_identification_error)}};
    out["work"] = json{{"extracted", number(report.w_ext)},
                       {"weighted", number(report.work_weighted)},
                       {"bound", number(report.work_bound)},
                       {"margin", number(report.work_bound - report.work_weighted)}};
    if (report.carnot) {
        const CarnotReport& c = *report.carnot;
        json carnot{{"hot_index", c.hot_index},
                    {"cold_index", c.cold_index},
                    {"t_hot", number(c.t_hot)},
                    {"t_cold", number(c.t_cold)},
                    {"heat_hot", number(c.heat_hot)},
                    {"heat_cold", number(c.heat_cold)},
                    {"carnot_efficiency", number(c.carnot_efficiency)},
                    {"work_bound", number(c.work_bound)},
                    {"delta_u_negligible", c.delta_u_negligible}};
        carnot["efficiency"] = c.efficiency ? number(*c.efficiency) : json(nullptr);
        out["carnot"] = carnot;
    } else {
        out["carnot"] = nullptr;
    }
    if (report.discord) {
        const DiscordForm& d = *report.discord;
        out["discord"] = json{{"mutual_initial", number(d.mutual_initial)},
                              {"classical_initial", number(d.classical_initial)},
                              {"discord_initial", number(d.discord_initial)},
                              {"classical_measured", number(d.classical_measured)},
                              {"discord_measured", number(d.discord_measured)},
                              {"correlation_budget", number(d.correlation_budget)},
                              {"bound_via_decomposition", number(d.bound_via_decomposition)}};
    } else {
        out["discord"] = nullptr;
    }
    out["violations"] = check_violations(report);
    return out;
}

std::size_t reservoir_total(const EngineScenario& scenario) {
    std::size_t total = 1;
    for (const auto& r : scenario.reservoirs) total *= r.matrix.rows();
    return total;
}

void csv_line(std::ostringstream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != 0) out << ',';
        out << cells[i];
    }
    out << '\n';
}

} // namespace

std::string format_number(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

json report_to_json(const EngineScenario& scenario, const BoundReport& report) {
    json out;
    out["mode"] = "single";
    out.update(body_json(scenario, report));
    return out;
}

json report_to_json(const EngineScenario& first, const EngineScenario& second,
                    const TwoEngineReport& report) {
    json out;
    out["mode"] = "two_engine";
    out["label"] = first.label;
    out["overlap"] = number(report.overlap);
    out["eur"] = json{{"lhs", number(report.eur.lhs)},
                      {"rhs", number(report.eur.rhs)},
                      {"margin", number(report.eur.margin)}};
    out["joint"] = json{{"lhs", number(report.joint_lhs)},
                        {"rhs", number(report.joint_rhs)},
                        {"margin", number(report.joint_margin)}};
    out["work_bounds"] = json{{"first", number(report.work_bound_first)},
                              {"second", number(report.work_bound_second)},
                              {"sum_lower_bound", number(report.work_sum_lower_bound)},
                              {"margin", number(report.bound_sum_margin)}};
    out["first"] = body_json(first, report.first);
    out["second"] = body_json(second, report.second);
    out["violations"] = check_violations(report);
    return out;
}

std::string report_to_csv(const EngineScenario& scenario, const BoundReport& report) {
    std::ostringstream out;
    csv_line(out, {"label",
                   "dim_system",
                   "reservoir_count",
                   "dim_reservoir_total",
                   "dim_ancilla",
                   "dim_memory",
                   "temperature",
                   "boltzmann",
                   "probability_sum",
                   "e_s_initial",
                   "e_s_final",
                   "delta_u_s",
                   "heat_total",
                   "z_s_initial",
                   "z_s_final",
                   "f_s_initial",
                   "f_s_final",
                   "delta_f_s",
                   "delta_s_a",
                   "delta_s_b",
                   "delta_mutual",
                   "w_ext",
                   "work_weighted",
                   "work_bound",
                   "work_bound_margin",
                   "measurement_entropy_gain",
                   "chain_lhs",
                   "chain_rhs",
                   "chain_margin",
                   "klein_divergence",
                   "marginal_a_drift",
                   "marginal_b_drift",
                   "branch_check_applicable",
                   "branch_identification_error",
                   "violation_count"});
    const auto n = [](double x) { return format_number(x); };
    csv_line(out, {scenario.label,
                   std::to_string(scenario.system_dim()),
                   std::to_string(scenario.reservoirs.size()),
                   std::to_string(reservoir_total(scenario)),
                   std::to_string(scenario.ancilla_dim()),
                   std::to_string(scenario.memory_dim()),
                   n(scenario.system_temperature),
                   n(scenario.boltzmann),
                   n(report.probability_sum),
                   n(report.e_s_initial),
                   n(report.e_s_final),
                   n(report.delta_u_s),
                   n(report.heat_total),
                   n(report.z_s_initial),
                   n(report.z_s_final),
                   n(report.f_s_initial),
                   n(report.f_s_final),
                   n(report.delta_f_s),
                   n(report.delta_s_a),
                   n(report.delta_s_b),
                   n(report.delta_mutual),
                   n(report.w_ext),
                   n(report.work_weighted),
                   n(report.work_bound),
                   n(report.work_bound - report.work_weighted),
                   n(report.measurement_entropy_gain),
                   n(report.chain_lhs),
                   n(report.chain_rhs),
                   n(report.chain_rhs - report.chain_lhs),
                   n(report.klein_divergence),
                   n(report.marginal_a_drift),
                   n(report.marginal_b_drift),
                   report.branch_check_applicable ? "1" : "0",
                   n(report.branch_identification_error),
                   std::to_string(check_violations(report).size())});
    return out.str();
}

std::string report_to_csv(const EngineScenario& first, const EngineScenario&,
                          const TwoEngineReport& report) {
    std::ostringstream out;
    csv_line(out, {"label",
                   "overlap",
                   "eur_lhs",
                   "eur_rhs",
                   "eur_margin",
                   "joint_lhs",
                   "joint_rhs",
                   "joint_margin",
                   "work_bound_first",
                   "work_bound_second",
                   "work_sum_lower_bound",
                   "bound_sum_margin",
                   "w_ext_first",
                   "w_ext_second",
                   "violation_count"});
    const auto n = [](double x) { return format_number(x); };
    csv_line(out, {first.label,
                   n(report.overlap),
                   n(report.eur.lhs),
                   n(report.eur.rhs),
                   n(report.eur.margin),
                   n(report.joint_lhs),
                   n(report.joint_rhs),
                   n(report.joint_margin),
                   n(report.work_bound_first),
                   n(report.work_bound_second),
                   n(report.work_sum_lower_bound),
                   n(report.bound_sum_margin),
                   n(report.first.w_ext),
                   n(report.second.w_ext),
                   std::to_string(check_violations(report).size())});
    return out.str();
}

} // namespace demon
