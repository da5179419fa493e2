#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "demon/engine.hpp"
#include "demon/scenario.hpp"
#include "demon/states.hpp"
#include "demon/tensor.hpp"
#include "support/oracles.hpp"

using demon::ComplexMatrix;
using demon::cplx;
using demon::SubsystemLayout;

TEST_CASE("density matrix construction enforces the state axioms") {
    const SubsystemLayout qubit = SubsystemLayout::single("S", 2);

    ComplexMatrix not_normalized = ComplexMatrix::identity(2);
    CHECK_THROWS(demon::DensityMatrix(not_normalized, qubit));

    ComplexMatrix not_hermitian(2, 2, {cplx{0.5, 0}, cplx{0.3, 0.1}, cplx{0, 0}, cplx{0.5, 0}});
    CHECK_THROWS(demon::DensityMatrix(not_hermitian, qubit));

    ComplexMatrix not_psd(2, 2, {cplx{1.5, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-0.5, 0}});
    CHECK_THROWS(demon::DensityMatrix(not_psd, qubit));

    ComplexMatrix wrong_size = ComplexMatrix::identity(3);
    wrong_size *= cplx{1.0 / 3.0, 0.0};
    CHECK_THROWS(demon::DensityMatrix(wrong_size, qubit));

    ComplexMatrix fine = ComplexMatrix::identity(2);
    fine *= cplx{0.5, 0.0};
    const demon::DensityMatrix rho(fine, qubit);
    CHECK(rho.purity() == doctest::Approx(0.5));
}

TEST_CASE("gibbs state of a qubit gap") {
    ComplexMatrix h(2, 2);
    h(1, 1) = cplx{1.0, 0.0};
    const demon::GibbsResult g = demon::gibbs_state(h, 1.0);
    const double z = 1.0 + std::exp(-1.0);
    CHECK(g.partition_function == doctest::Approx(z).epsilon(1e-12));
    CHECK(g.log_partition == doctest::Approx(std::log(z)).epsilon(1e-12));
    CHECK(g.state.matrix()(0, 0).real() == doctest::Approx(1.0 / z).epsilon(1e-12));
    CHECK(g.state.matrix()(1, 1).real() == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-12));
    CHECK(std::abs(g.state.matrix()(0, 1)) < 1e-15);
}

TEST_CASE("gibbs state survives a deep spectrum") {
    ComplexMatrix h(2, 2);
    h(0, 0) = cplx{-2000.0, 0.0};
    const demon::GibbsResult g = demon::gibbs_state(h, 1.0);
    CHECK(std::isfinite(g.log_partition));
    CHECK(g.log_partition == doctest::Approx(2000.0).epsilon(1e-9));
    CHECK(g.state.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("initial engine state is the expected product") {
    const demon::ScenarioDocument doc = demon::builtin_scenario("do-nothing", 0);
    const demon::DensityMatrix initial = demon::build_initial_state(doc.first);
    CHECK(initial.layout().describe() == "S(2) x R1(2) x A(2) x B(2)");

    const ComplexMatrix gibbs =
        demon::gibbs_state(doc.first.h_s_initial.matrix, 1.0).state.matrix();
    const ComplexMatrix expected =
        demon::kron(demon::kron(gibbs, gibbs), doc.first.rho_ab_initial.matrix());
    CHECK(demon::max_abs_diff(initial.matrix(), expected) < 1e-13);
}

TEST_CASE("haar unitaries are unitary and seed-deterministic") {
    for (const std::size_t dim : {2u, 3u, 8u}) {
        const ComplexMatrix u = demon::haar_random_unitary(dim, 42);
        CHECK(demon::is_unitary(u));
        const ComplexMatrix again = demon::haar_random_unitary(dim, 42);
        CHECK(demon::max_abs_diff(u, again) == 0.0);
        const ComplexMatrix other = demon::haar_random_unitary(dim, 43);
        CHECK(demon::max_abs_diff(u, other) > 1e-3);
    }
}

TEST_CASE("haar sampling is not biased toward a fixed phase convention") {
    // Column phases depend on the R-diagonal correction; without it the
    // first row would be real-positive far too often.
    std::size_t positive_real = 0;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        const ComplexMatrix u = demon::haar_random_unitary(2, seed);
        const cplx entry = u(0, 0);
        if (std::abs(entry.imag()) < 1e-12 && entry.real() > 0) ++positive_real;
    }
    CHECK(positive_real < 8);
}

TEST_CASE("random density matrices respect the rank request") {
    const demon::DensityMatrix rho = demon::random_density_matrix(4, 2, 7);
    rho.validate();
    const std::vector<double> spectrum = demon::herm_eigenvalues(rho.matrix());
    std::size_t support = 0;
    for (const double x : spectrum) {
        if (x > 1e-12) ++support;
    }
    CHECK(support == 2);
    CHECK(rho.layout().total_dim() == 4);

    const demon::DensityMatrix again = demon::random_density_matrix(4, 2, 7);
    CHECK(demon::max_abs_diff(rho.matrix(), again.matrix()) == 0.0);
}

TEST_CASE("bell state has pure whole and mixed halves") {
    const demon::DensityMatrix bell = demon::bell_state();
    CHECK(bell.purity() == doctest::Approx(1.0).epsilon(1e-12));
    const demon::DensityMatrix half = bell.reduce({"A"});
    CHECK(half.purity() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bell.layout().describe() == "A(2) x B(2)");
}

TEST_CASE("pure_state normalizes its input") {
    ComplexMatrix ket(2, 1);
    ket(0, 0) = cplx{3.0, 0.0};
    ket(1, 0) = cplx{0.0, 4.0};
    const demon::DensityMatrix rho = demon::pure_state(ket, SubsystemLayout::single("S", 2));
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(rho.matrix()(1, 1).real() == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hamiltonian terms validate their pieces") {
    ComplexMatrix h(2, 2);
    h(1, 1) = cplx{1.0, 0.0};
    demon::HamiltonianTerm term{"R1", h, 2.0};
    term.validate();
    CHECK(term.beta() == doctest::Approx(0.5));

    demon::HamiltonianTerm cold{"R1", h, -1.0};
    CHECK_THROWS(cold.validate());

    demon::HamiltonianTerm skew{"R1", oracle::random_matrix(2, 2, 3), 1.0};
    CHECK_THROWS(skew.validate());
}
