#include "demon/uncertainty.hpp"

#include <cmath>
#include <stdexcept>

#include "demon/tolerances.hpp"

namespace demon {

double overlap_c(const MeasurementBasis& k_basis, const MeasurementBasis& m_basis) {
    if (k_basis.dim() != m_basis.dim()) {
        throw std::invalid_argument("overlap_c: bases act on different dimensions");
    }
    const ComplexMatrix gram = k_basis.vectors().adjoint() * m_basis.vectors();
    double c = 0.0;
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        for (std::size_t j = 0; j < gram.cols(); ++j) {
            c = std::max(c, std::norm(gram(i, j)));
        }
    }
    return c;
}

EurReport eur_check(const DensityMatrix& rho, const MeasurementBasis& k_basis,
                    const MeasurementBasis& m_basis) {
    const auto& layout = rho.layout();
    if (layout.factor_count() != 2) {
        throw std::invalid_argument("eur_check: state must have exactly two factors");
    }
    const std::string measured = layout.factors()[0].name;
    const std::string memory = layout.factors()[1].name;
    if (k_basis.dim() != layout.factors()[0].dim || m_basis.dim() != layout.factors()[0].dim) {
        throw std::invalid_argument("eur_check: basis does not match the measured factor");
    }

    EurReport report;
    report.overlap = overlap_c(k_basis, m_basis);
    report.lhs = measured_conditional_entropy(rho, k_basis, measured) +
                 measured_conditional_entropy(rho, m_basis, measured);
    report.rhs = std::log(1.0 / report.overlap) +
                 conditional_entropy(rho, {measured}, {memory});
    report.margin = report.lhs - report.rhs;
    return report;
}

namespace {

void require_shared_front(const EngineScenario& first, const EngineScenario& second) {
    const auto same = [](const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= 1e-12;
    };
    if (!same(first.h_s_initial.matrix, second.h_s_initial.matrix) ||
        first.system_temperature != second.system_temperature ||
        first.boltzmann != second.boltzmann) {
        throw std::invalid_argument("two_engine_bounds: engines start from different system data");
    }
    if (first.reservoirs.size() != second.reservoirs.size()) {
        throw std::invalid_argument("two_engine_bounds: engines have different reservoirs");
    }
    for (std::size_t m = 0; m < first.reservoirs.size(); ++m) {
        if (first.reservoirs[m].name != second.reservoirs[m].name ||
            first.reservoirs[m].temperature != second.reservoirs[m].temperature ||
            !same(first.reservoirs[m].matrix, second.reservoirs[m].matrix)) {
            throw std::invalid_argument(
                "two_engine_bounds: engines have different reservoirs");
        }
    }
    if (first.reservoirs.size() > 1) {
        throw std::invalid_argument("two_engine_bounds: needs at most one reservoir");
    }
    if (!same(first.rho_ab_initial.matrix(), second.rho_ab_initial.matrix())) {
        throw std::invalid_argument(
            "two_engine_bounds: engines hold different ancilla-memory states");
    }
    if (!same(first.u_interaction, second.u_interaction)) {
        throw std::invalid_argument("two_engine_bounds: engines use different interactions");
    }
    const ComplexMatrix eye = ComplexMatrix::identity(first.u_premeasure.rows());
    if (max_abs_diff(first.u_premeasure, eye) > 1e-12 ||
        second.u_premeasure.rows() != first.u_premeasure.rows() ||
        max_abs_diff(second.u_premeasure, eye) > 1e-12) {
        throw std::invalid_argument(
            "two_engine_bounds: the pre-measurement step must be the identity, otherwise "
            "the two runs measure different states and the comparison is meaningless");
    }
}

} // namespace

TwoEngineReport two_engine_bounds(const EngineScenario& first, const EngineScenario& second) {
    first.validate();
    second.validate();
    require_shared_front(first, second);

    const StageTrace trace_first = run_engine(first);
    const StageTrace trace_second = run_engine(second);

    TwoEngineReport report;
    report.first = energy_accounting(first, trace_first);
    bound_evaluation(first, trace_first, report.first);
    report.second = energy_accounting(second, trace_second);
    bound_evaluation(second, trace_second, report.second);

    report.overlap = overlap_c(first.basis, second.basis);
    report.eur = eur_check(trace_first.ab_initial, first.basis, second.basis);

    const double s_ab_initial = vn_entropy(trace_first.ab_initial);
    const double s_b_initial = vn_entropy(trace_first.b_initial);
    report.joint_lhs = vn_entropy(trace_first.ab_measured) + vn_entropy(trace_second.ab_measured);
    report.joint_rhs = std::log(1.0 / report.overlap) + s_ab_initial + s_b_initial;
    report.joint_margin = report.joint_lhs - report.joint_rhs;

    const double kt = first.boltzmann * first.system_temperature;
    report.work_bound_first = report.first.work_bound;
    report.work_bound_second = report.second.work_bound;
    report.work_sum_lower_bound =
        -report.first.delta_f_s - report.second.delta_f_s +
        kt * (std::log(1.0 / report.overlap) - (s_ab_initial - s_b_initial));
    report.bound_sum_margin =
        report.work_bound_first + report.work_bound_second - report.work_sum_lower_bound;
    return report;
}

std::vector<std::string> check_violations(const TwoEngineReport& report) {
    std::vector<std::string> violations;
    for (const auto& v : check_violations(report.first)) violations.push_back("first: " + v);
    for (const auto& v : check_violations(report.second)) violations.push_back("second: " + v);
    const auto floor = [&](const std::string& what, double margin) {
        if (margin < -tol::bound_slack) {
            violations.push_back(what + " (margin " + std::to_string(margin) + ")");
        }
    };
    floor("conditional entropies fell below the uncertainty floor", report.eur.margin);
    floor("post-measurement entropies fell below the joint floor", report.joint_margin);
    floor("the two work bounds fell below their combined floor", report.bound_sum_margin);
    return violations;
}

} // namespace demon
