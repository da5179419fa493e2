#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "demon/engine.hpp"
#include "demon/scenario.hpp"
#include "demon/seeding.hpp"
#include "demon/tensor.hpp"
#include "support/oracles.hpp"

using demon::ComplexMatrix;
using demon::cplx;
using demon::EngineScenario;
using demon::SubsystemLayout;

namespace {

const double ln2 = std::log(2.0);

EngineScenario randomized_scenario(std::uint64_t seed, bool random_premeasure) {
    EngineScenario scenario = demon::builtin_scenario("do-nothing", seed).first;
    scenario.label = "randomized";
    scenario.h_s_initial.matrix = oracle::random_hermitian(2, demon::derive_seed(seed, 1));
    scenario.h_s_final.matrix = oracle::random_hermitian(2, demon::derive_seed(seed, 2));
    scenario.reservoirs[0].matrix = oracle::random_hermitian(2, demon::derive_seed(seed, 3));
    scenario.reservoirs[0].temperature = 1.7;
    scenario.system_temperature = 0.8;
    scenario.rho_ab_initial = demon::random_density_matrix(SubsystemLayout({{"A", 2}, {"B", 2}}),
                                                           4, demon::derive_seed(seed, 4));
    scenario.u_interaction = demon::haar_random_unitary(4, demon::derive_seed(seed, 5));
    if (random_premeasure) {
        scenario.u_premeasure = demon::haar_random_unitary(4, demon::derive_seed(seed, 6));
    }
    scenario.basis = demon::MeasurementBasis::from_unitary(
        "haar", demon::haar_random_unitary(2, demon::derive_seed(seed, 7)));
    scenario.feedback = {demon::haar_random_unitary(4, demon::derive_seed(seed, 8)),
                         demon::haar_random_unitary(4, demon::derive_seed(seed, 9))};
    return scenario;
}

} // namespace

TEST_CASE("szilard staging gives two even branches") {
    const EngineScenario scenario = demon::builtin_scenario("szilard", 0).first;
    const demon::StageTrace trace = demon::run_engine(scenario);
    REQUIRE(trace.outcome_probabilities.size() == 2);
    CHECK(trace.outcome_probabilities[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(trace.outcome_probabilities[1] == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(trace.branches.size() == 2);

    // Conditioned on the record, the system is pure.
    for (const auto& branch : trace.branches) {
        CHECK(branch.state.reduce({"S"}).purity() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(demon::vn_entropy(trace.a_measured) == doctest::Approx(ln2).epsilon(1e-12));
}

TEST_CASE("the measured state is the branch mixture") {
    const EngineScenario scenario = randomized_scenario(3, true);
    const demon::StageTrace trace = demon::run_engine(scenario);

    // rho_SR after feedback must equal sum_k p_k U_k tau_k U_k^dagger.
    ComplexMatrix sr_mixture(4, 4);
    for (const auto& branch : trace.branches) {
        const ComplexMatrix tau = branch.state.reduce({"S", "R1"}).matrix();
        ComplexMatrix steered = tau.conjugated_by(scenario.feedback[branch.outcome]);
        steered *= cplx{branch.probability, 0.0};
        sr_mixture += steered;
    }
    CHECK(demon::max_abs_diff(sr_mixture, trace.sr_final.matrix()) < 1e-12);
}

TEST_CASE("probabilities come from the ancilla marginal after the rotation") {
    const EngineScenario scenario = randomized_scenario(4, true);
    const demon::StageTrace trace = demon::run_engine(scenario);
    double total = 0.0;
    for (const double p : trace.outcome_probabilities) {
        CHECK(p >= 0.0);
        total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(demon::vn_entropy(trace.b_final) ==
          doctest::Approx(demon::vn_entropy(trace.b_measured)).epsilon(1e-10));
}

TEST_CASE("assembled feedback unitary is block structured") {
    const EngineScenario scenario = randomized_scenario(5, false);
    const ComplexMatrix u3 = demon::assemble_feedback_unitary(scenario);
    CHECK(demon::is_unitary(u3));

    // For the computational record basis the assembly is a direct sum:
    // entries mixing different ancilla digits vanish.
    EngineScenario computational = scenario;
    computational.basis = demon::MeasurementBasis::computational(2);
    const ComplexMatrix direct = demon::assemble_feedback_unitary(computational);
    const SubsystemLayout layout = computational.full_layout();
    const auto strides = layout.strides();
    const std::size_t a_stride = strides[layout.index_of("A")];
    for (std::size_t r = 0; r < direct.rows(); ++r) {
        for (std::size_t c = 0; c < direct.cols(); ++c) {
            const std::size_t ra = (r / a_stride) % 2;
            const std::size_t ca = (c / a_stride) % 2;
            if (ra != ca) CHECK(std::abs(direct(r, c)) < 1e-14);
        }
    }
}

TEST_CASE("identity everything leaves every ledger entry at zero") {
    const demon::BoundReport report =
        demon::evaluate_engine(demon::builtin_scenario("do-nothing", 0).first);
    CHECK(report.delta_u_s == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.heat_total == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.delta_f_s == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.delta_s_a == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.delta_s_b == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.delta_mutual == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.work_bound == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.klein_divergence >= 0.0);
    CHECK(report.klein_divergence < 1e-10);
    CHECK(report.branch_check_applicable);
    CHECK(report.branch_identification_error < 1e-12);
    CHECK(demon::check_violations(report).empty());
}

TEST_CASE("random engines violate nothing") {
    for (std::uint64_t seed = 10; seed < 25; ++seed) {
        const EngineScenario scenario = randomized_scenario(seed, true);
        const demon::BoundReport report = demon::evaluate_engine(scenario);
        CAPTURE(seed);
        const auto violations = demon::check_violations(report);
        for (const auto& v : violations) MESSAGE(v);
        CHECK(violations.empty());
        CHECK(report.measurement_entropy_gain >= -1e-9);
        CHECK(report.work_bound - report.work_weighted >= -1e-8);
        CHECK(report.chain_rhs - report.chain_lhs >= -1e-8);
        CHECK_FALSE(report.branch_check_applicable);
    }
}

TEST_CASE("branch identification holds exactly when the pre-measurement step is trivial") {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
        const EngineScenario scenario = randomized_scenario(seed, false);
        const demon::BoundReport report = demon::evaluate_engine(scenario);
        CHECK(report.branch_check_applicable);
        CHECK(report.branch_identification_error < 1e-9);
    }
}

TEST_CASE("a copying rotation breaks branch identification, and the report says so") {
    const EngineScenario scenario = demon::builtin_scenario("szilard", 0).first;
    const demon::BoundReport report = demon::evaluate_engine(scenario);
    CHECK_FALSE(report.branch_check_applicable);
    CHECK(report.branch_identification_error > 0.4);  // weights 1/2 vs 1
    CHECK(demon::check_violations(report).empty());
}

TEST_CASE("discord split agrees with the work bound") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        const EngineScenario scenario = randomized_scenario(seed, true);
        const demon::BoundReport report = demon::evaluate_engine(scenario);
        REQUIRE(report.discord.has_value());
        CHECK(std::abs(report.discord->bound_via_decomposition - report.work_bound) < 1e-8);
        CHECK(report.discord->discord_measured < 1e-9);
        CHECK(report.discord->discord_initial >= 0.0);
    }
}

TEST_CASE("discord can be skipped") {
    demon::EvaluateOptions options;
    options.with_discord = false;
    const demon::BoundReport report =
        demon::evaluate_engine(demon::builtin_scenario("szilard", 0).first, options);
    CHECK_FALSE(report.discord.has_value());
}

TEST_CASE("carnot accounting appears only for two fixed-term reservoirs") {
    const demon::BoundReport two =
        demon::evaluate_engine(demon::builtin_scenario("carnot2", 3).first);
    REQUIRE(two.carnot.has_value());
    CHECK(two.carnot->t_hot == 2.0);
    CHECK(two.carnot->t_cold == 1.0);
    CHECK(two.carnot->delta_u_negligible);
    CHECK(std::abs(two.delta_u_s) < 1e-12);
    CHECK(two.carnot->carnot_efficiency == doctest::Approx(0.5));

    const demon::BoundReport one =
        demon::evaluate_engine(demon::builtin_scenario("do-nothing", 0).first);
    CHECK_FALSE(one.carnot.has_value());
}

TEST_CASE("scenario validation rejects structural mistakes") {
    const EngineScenario good = demon::builtin_scenario("do-nothing", 0).first;

    EngineScenario bad = good;
    bad.feedback.pop_back();
    CHECK_THROWS(bad.validate());

    bad = good;
    bad.u_interaction = oracle::random_matrix(4, 4, 1);
    CHECK_THROWS(bad.validate());

    bad = good;
    bad.u_premeasure = ComplexMatrix::identity(8);
    CHECK_THROWS(bad.validate());

    bad = good;
    bad.reservoirs[0].name = "A";
    CHECK_THROWS(bad.validate());

    bad = good;
    bad.system_temperature = 0.0;
    CHECK_THROWS(bad.validate());

    bad = good;
    bad.rho_ab_initial = demon::random_density_matrix(SubsystemLayout({{"X", 2}, {"B", 2}}), 4, 2);
    CHECK_THROWS(bad.validate());
}

TEST_CASE("violation messages single out the failing ledger entry") {
    demon::BoundReport report;  // all zeros is a consistent empty ledger
    report.probability_sum = 1.0;
    CHECK(demon::check_violations(report).empty());

    report.work_weighted = 1.0;
    report.work_bound = 0.5;
    const auto violations = demon::check_violations(report);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("exceeds its bound") != std::string::npos);

    demon::BoundReport drift;
    drift.probability_sum = 1.0;
    drift.marginal_a_drift = 1e-3;
    REQUIRE(demon::check_violations(drift).size() == 1);
    CHECK(demon::check_violations(drift)[0].find("ancilla") != std::string::npos);
}
