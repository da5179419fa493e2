#include "demon/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "demon/logging.hpp"
#include "demon/tensor.hpp"
#include "demon/tolerances.hpp"

namespace demon {

std::size_t EngineScenario::interaction_dim() const {
    std::size_t d = system_dim();
    for (const auto& r : reservoirs) d *= r.matrix.rows();
    return d;
}

SubsystemLayout EngineScenario::full_layout() const {
    std::vector<SubsystemLayout::Factor> factors;
    factors.push_back({"S", system_dim()});
    for (const auto& r : reservoirs) factors.push_back({r.name, r.matrix.rows()});
    factors.push_back({"A", ancilla_dim()});
    factors.push_back({"B", memory_dim()});
    return SubsystemLayout(std::move(factors));
}

SubsystemLayout EngineScenario::sr_layout() const {
    std::vector<SubsystemLayout::Factor> factors;
    factors.push_back({"S", system_dim()});
    for (const auto& r : reservoirs) factors.push_back({r.name, r.matrix.rows()});
    return SubsystemLayout(std::move(factors));
}

std::vector<std::string> EngineScenario::sr_names() const {
    std::vector<std::string> names{"S"};
    for (const auto& r : reservoirs) names.push_back(r.name);
    return names;
}

void EngineScenario::validate() const {
    h_s_initial.validate();
    h_s_final.validate();
    if (h_s_initial.matrix.rows() != h_s_final.matrix.rows()) {
        throw std::invalid_argument("EngineScenario: initial and final system terms differ in size");
    }
    if (!(system_temperature > 0.0)) {
        throw std::invalid_argument("EngineScenario: system temperature must be positive");
    }
    if (!(boltzmann > 0.0)) {
        throw std::invalid_argument("EngineScenario: boltzmann constant must be positive");
    }
    for (const auto& r : reservoirs) {
        r.validate();
        if (r.name == "S" || r.name == "A" || r.name == "B") {
            throw std::invalid_argument("EngineScenario: reservoir name '" + r.name +
                                        "' collides with a register name");
        }
    }
    const auto& ab = rho_ab_initial.layout();
    if (ab.factor_count() != 2 || ab.factors()[0].name != "A" || ab.factors()[1].name != "B") {
        throw std::invalid_argument("EngineScenario: the ancilla-memory state must have layout "
                                    "A x B, got " + ab.describe());
    }
    rho_ab_initial.validate();
    full_layout();  // throws on dimension cap

    const std::size_t sr = interaction_dim();
    if (u_interaction.rows() != sr || !is_unitary(u_interaction)) {
        throw std::invalid_argument(
            "EngineScenario: interaction unitary must be unitary on S x reservoirs");
    }
    if (u_premeasure.rows() != system_dim() * ancilla_dim() || !is_unitary(u_premeasure)) {
        throw std::invalid_argument(
            "EngineScenario: pre-measurement unitary must be unitary on S x A");
    }
    if (basis.dim() != ancilla_dim()) {
        throw std::invalid_argument("EngineScenario: measurement basis does not match the ancilla");
    }
    if (feedback.size() != ancilla_dim()) {
        throw std::invalid_argument("EngineScenario: need one feedback unitary per outcome, got " +
                                    std::to_string(feedback.size()));
    }
    for (const auto& u : feedback) {
        if (u.rows() != sr || !is_unitary(u)) {
            throw std::invalid_argument(
                "EngineScenario: every feedback unitary must be unitary on S x reservoirs");
        }
    }
}

ComplexMatrix assemble_feedback_unitary(const EngineScenario& scenario) {
    const SubsystemLayout layout = scenario.full_layout();
    std::vector<std::string> sra = scenario.sr_names();
    sra.push_back("A");
    ComplexMatrix u3(layout.total_dim(), layout.total_dim());
    for (std::size_t k = 0; k < scenario.feedback.size(); ++k) {
        u3 += embed(kron(scenario.feedback[k], scenario.basis.projector(k)), layout, sra);
    }
    if (!is_unitary(u3)) {
        throw std::runtime_error("assemble_feedback_unitary: assembled operator is not unitary");
    }
    return u3;
}

StageTrace run_engine(const EngineScenario& scenario) {
    scenario.validate();
    const SubsystemLayout layout = scenario.full_layout();
    const std::vector<std::string> srn = scenario.sr_names();
    const std::string a_only[] = {"A"};

    DensityMatrix initial = build_initial_state(scenario);

    const ComplexMatrix w1 = embed(scenario.u_interaction, layout, srn);
    DensityMatrix interacted(initial.matrix().conjugated_by(w1), layout);

    const std::string sa[] = {"S", "A"};
    const ComplexMatrix w2 = embed(scenario.u_premeasure, layout, sa);
    const ComplexMatrix staged = interacted.matrix().conjugated_by(w2);

    const SubsystemLayout branch_layout = layout.drop(a_only);
    ComplexMatrix measured_m(layout.total_dim(), layout.total_dim());
    std::vector<double> probabilities(scenario.ancilla_dim(), 0.0);
    std::vector<StageBranch> branches;
    for (std::size_t k = 0; k < scenario.ancilla_dim(); ++k) {
        const ComplexMatrix pk = embed(scenario.basis.projector(k), layout, a_only);
        measured_m += pk * staged * pk;
        ComplexMatrix cond = contract_factor(staged, layout, "A", scenario.basis.ket(k));
        const double p = cond.trace().real();
        probabilities[k] = p;
        if (p < tol::branch_skip) continue;
        cond *= cplx{1.0 / p, 0.0};
        branches.push_back(StageBranch{k, p, DensityMatrix(std::move(cond), branch_layout)});
    }
    DensityMatrix measured(std::move(measured_m), layout);

    const ComplexMatrix u3 = assemble_feedback_unitary(scenario);
    DensityMatrix final_state(measured.matrix().conjugated_by(u3), layout);

    DensityMatrix sr_initial = initial.reduce(srn);
    DensityMatrix sr_final = final_state.reduce(srn);
    DensityMatrix ab_initial = initial.reduce({"A", "B"});
    DensityMatrix ab_measured = measured.reduce({"A", "B"});
    DensityMatrix a_initial = initial.reduce({"A"});
    DensityMatrix a_measured = measured.reduce({"A"});
    DensityMatrix a_final = final_state.reduce({"A"});
    DensityMatrix b_initial = initial.reduce({"B"});
    DensityMatrix b_measured = measured.reduce({"B"});
    DensityMatrix b_final = final_state.reduce({"B"});

    return StageTrace{std::move(initial),
                      std::move(interacted),
                      std::move(measured),
                      std::move(final_state),
                      std::move(probabilities),
                      std::move(branches),
                      std::move(sr_initial),
                      std::move(sr_final),
                      std::move(ab_initial),
                      std::move(ab_measured),
                      std::move(a_initial),
                      std::move(a_measured),
                      std::move(a_final),
                      std::move(b_initial),
                      std::move(b_measured),
                      std::move(b_final)};
}

BoundReport energy_accounting(const EngineScenario& scenario, const StageTrace& trace) {
    BoundReport report;
    const auto energy_of = [&](const DensityMatrix& full, const std::string& name,
                               const ComplexMatrix& h) {
        return real_expectation(h, full.reduce({name}).matrix());
    };

    report.e_s_initial = energy_of(trace.initial, "S", scenario.h_s_initial.matrix);
    report.e_s_final = energy_of(trace.final_state, "S", scenario.h_s_final.matrix);
    report.delta_u_s = report.e_s_final - report.e_s_initial;

    for (const auto& r : scenario.reservoirs) {
        const double ei = energy_of(trace.initial, r.name, r.matrix);
        const double ef = energy_of(trace.final_state, r.name, r.matrix);
        report.reservoir_energy_initial.push_back(ei);
        report.reservoir_energy_final.push_back(ef);
        report.heat.push_back(ei - ef);
        report.heat_total += ei - ef;
    }

    const double kt = scenario.boltzmann * scenario.system_temperature;
    const GibbsResult gi = gibbs_state(scenario.h_s_initial.matrix, scenario.beta());
    const GibbsResult gf = gibbs_state(scenario.h_s_final.matrix, scenario.beta());
    report.z_s_initial = gi.partition_function;
    report.z_s_final = gf.partition_function;
    report.f_s_initial = -kt * gi.log_partition;
    report.f_s_final = -kt * gf.log_partition;
    report.delta_f_s = report.f_s_final - report.f_s_initial;

    report.w_ext = report.heat_total - report.delta_u_s;
    report.work_weighted = -report.delta_u_s;
    for (std::size_t m = 0; m < scenario.reservoirs.size(); ++m) {
        report.work_weighted +=
            (scenario.system_temperature / scenario.reservoirs[m].temperature) * report.heat[m];
    }
    return report;
}

namespace {

bool is_identity(const ComplexMatrix& m, double tolerance) {
    if (!m.is_square()) return false;
    return max_abs_diff(m, ComplexMatrix::identity(m.rows())) <= tolerance;
}

ComplexMatrix thermal_reference(const EngineScenario& scenario) {
    ComplexMatrix ref = gibbs_state(scenario.h_s_final.matrix, scenario.beta()).state.matrix();
    for (const auto& r : scenario.reservoirs) {
        ref = kron(ref, gibbs_state(r.matrix, r.beta(scenario.boltzmann)).state.matrix());
    }
    return ref;
}

double branch_identification(const EngineScenario& scenario, const StageTrace& trace) {
    // Unnormalized memory branch from measuring the initial A,B state
    // directly, against the same branch pulled out of the staged run.
    double worst = 0.0;
    const auto& ab = trace.ab_initial;
    std::vector<const StageBranch*> by_outcome(scenario.ancilla_dim(), nullptr);
    for (const auto& b : trace.branches) by_outcome[b.outcome] = &b;
    for (std::size_t k = 0; k < scenario.ancilla_dim(); ++k) {
        const ComplexMatrix direct =
            contract_factor(ab.matrix(), ab.layout(), "A", scenario.basis.ket(k));
        if (by_outcome[k] == nullptr) {
            worst = std::max(worst, direct.max_abs());
            continue;
        }
        const StageBranch& branch = *by_outcome[k];
        ComplexMatrix staged = branch.state.reduce({"B"}).matrix();
        staged *= cplx{branch.probability, 0.0};
        worst = std::max(worst, max_abs_diff(direct, staged));
    }
    return worst;
}

} // namespace

void bound_evaluation(const EngineScenario& scenario, const StageTrace& trace,
                      BoundReport& report) {
    const double kt = scenario.boltzmann * scenario.system_temperature;

    report.delta_s_a = vn_entropy(trace.a_final) - vn_entropy(trace.a_initial);
    report.delta_s_b = vn_entropy(trace.b_final) - vn_entropy(trace.b_initial);
    report.delta_mutual = mutual_information(trace.ab_measured, {"A"}, {"B"}) -
                          mutual_information(trace.ab_initial, {"A"}, {"B"});
    report.work_bound = -report.delta_f_s +
                        kt * (report.delta_s_a + report.delta_s_b - report.delta_mutual);

    report.measurement_entropy_gain = vn_entropy(trace.measured) - vn_entropy(trace.initial);
    report.chain_lhs = vn_entropy(trace.sr_initial) - vn_entropy(trace.sr_final);
    report.chain_rhs = vn_entropy(trace.ab_measured) - vn_entropy(trace.ab_initial);

    report.klein_divergence = relative_entropy(trace.sr_final.matrix(), thermal_reference(scenario));

    report.marginal_a_drift = std::abs(vn_entropy(trace.a_final) - vn_entropy(trace.a_measured));
    report.marginal_b_drift = std::abs(vn_entropy(trace.b_final) - vn_entropy(trace.b_measured));

    report.branch_check_applicable = is_identity(scenario.u_premeasure, 1e-12);
    report.branch_identification_error = branch_identification(scenario, trace);

    report.probability_sum = 0.0;
    for (const double p : trace.outcome_probabilities) report.probability_sum += p;

    if (scenario.reservoirs.size() == 2 &&
        max_abs_diff(scenario.h_s_initial.matrix, scenario.h_s_final.matrix) <= 1e-12) {
        CarnotReport carnot{};
        carnot.hot_index =
            scenario.reservoirs[0].temperature >= scenario.reservoirs[1].temperature ? 0 : 1;
        carnot.cold_index = 1 - carnot.hot_index;
        carnot.t_hot = scenario.reservoirs[carnot.hot_index].temperature;
        carnot.t_cold = scenario.reservoirs[carnot.cold_index].temperature;
        carnot.heat_hot = report.heat[carnot.hot_index];
        carnot.heat_cold = report.heat[carnot.cold_index];
        carnot.carnot_efficiency = 1.0 - carnot.t_cold / carnot.t_hot;
        carnot.work_bound =
            carnot.carnot_efficiency * carnot.heat_hot +
            scenario.boltzmann * carnot.t_cold *
                (report.delta_s_a + report.delta_s_b - report.delta_mutual);
        carnot.delta_u_negligible = std::abs(report.delta_u_s) <= 1e-6;
        if (!carnot.delta_u_negligible) {
            log_info("carnot analysis: system energy changed by " +
                     std::to_string(report.delta_u_s) +
                     "; the efficiency bound is not guaranteed for this run");
        }
        carnot.efficiency = carnot.heat_hot > tol::negative_dust
                                ? std::optional<double>(report.w_ext / carnot.heat_hot)
                                : std::nullopt;
        report.carnot = carnot;
    }
}

DiscordForm discord_form(const EngineScenario& scenario, const StageTrace& trace,
                         const BoundReport& report) {
    if (scenario.reservoirs.size() > 1) {
        throw std::invalid_argument("discord_form: needs at most one reservoir");
    }
    if (scenario.ancilla_dim() != 2) {
        throw std::invalid_argument("discord_form: basis search needs a qubit ancilla");
    }
    const DiscordDecomposition initial = discord_decomposition(trace.ab_initial, true);
    const DiscordDecomposition measured =
        discord_decomposition(trace.ab_measured, false, scenario.basis);

    DiscordForm form{};
    form.mutual_initial = initial.mutual_information;
    form.classical_initial = initial.classical_correlation;
    form.discord_initial = initial.discord;
    form.classical_measured = measured.classical_correlation;
    form.discord_measured = measured.discord;
    form.correlation_budget = report.delta_s_a + report.delta_s_b -
                              (measured.classical_correlation - initial.classical_correlation) +
                              initial.discord;
    form.bound_via_decomposition =
        -report.delta_f_s +
        scenario.boltzmann * scenario.system_temperature * form.correlation_budget;
    return form;
}

BoundReport evaluate_engine(const EngineScenario& scenario, const EvaluateOptions& options) {
    const StageTrace trace = run_engine(scenario);
    BoundReport report = energy_accounting(scenario, trace);
    bound_evaluation(scenario, trace, report);
    if (options.with_discord && scenario.reservoirs.size() <= 1 && scenario.ancilla_dim() == 2) {
        report.discord = discord_form(scenario, trace, report);
    }
    return report;
}

std::vector<std::string> check_violations(const BoundReport& report) {
    std::vector<std::string> violations;
    const auto fail = [&](const std::string& what, double margin) {
        violations.push_back(what + " (margin " + std::to_string(margin) + ")");
    };

    if (std::abs(report.probability_sum - 1.0) > tol::equality) {
        fail("outcome probabilities do not sum to one", report.probability_sum - 1.0);
    }
    if (report.measurement_entropy_gain < -tol::equality) {
        fail("measurement decreased total entropy", report.measurement_entropy_gain);
    }
    if (report.chain_rhs - report.chain_lhs < -tol::bound_slack) {
        fail("entropy flow chain inverted", report.chain_rhs - report.chain_lhs);
    }
    if (report.work_bound - report.work_weighted < -tol::bound_slack) {
        fail("weighted work extraction exceeds its bound",
             report.work_bound - report.work_weighted);
    }
    if (!(report.klein_divergence >= -tol::equality)) {
        fail("divergence from the thermal reference is negative", report.klein_divergence);
    }
    if (report.marginal_a_drift > tol::equality) {
        fail("feedback changed the ancilla marginal entropy", report.marginal_a_drift);
    }
    if (report.marginal_b_drift > tol::equality) {
        fail("feedback changed the memory marginal entropy", report.marginal_b_drift);
    }
    if (report.branch_check_applicable &&
        report.branch_identification_error > tol::equality) {
        fail("measurement branches disagree with the direct decomposition",
             report.branch_identification_error);
    }
    if (report.carnot && report.carnot->delta_u_negligible &&
        report.w_ext - report.carnot->work_bound > tol::bound_slack) {
        fail("extracted work exceeds the two-reservoir bound",
             report.carnot->work_bound - report.w_ext);
    }
    if (report.discord &&
        std::abs(report.discord->bound_via_decomposition - report.work_bound) > tol::bound_slack) {
        fail("correlation split disagrees with the work bound",
             report.discord->bound_via_decomposition - report.work_bound);
    }
    return violations;
}

} // namespace demon
