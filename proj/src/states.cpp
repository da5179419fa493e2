#include "demon/states.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "demon/engine.hpp"
#include "demon/tolerances.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace demon {

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout)
    : DensityMatrix(std::move(matrix), std::move(layout), true) {}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout, bool checked)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
    if (checked) validate();
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix matrix, SubsystemLayout layout) {
    return DensityMatrix(std::move(matrix), std::move(layout), false);
}

void DensityMatrix::validate() const {
    if (!matrix_.is_square() || matrix_.rows() != layout_.total_dim()) {
        throw std::invalid_argument("DensityMatrix: matrix does not match layout " +
                                    layout_.describe());
    }
    if (!is_hermitian(matrix_, tol::hermitian)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    }
    const cplx tr = matrix_.trace();
    if (std::abs(tr - cplx{1.0, 0.0}) > tol::trace_one) {
        throw std::invalid_argument("DensityMatrix: trace deviates from one by more than tolerance");
    }
    const auto values = herm_eigenvalues(matrix_);
    if (!values.empty() && values.front() < -tol::psd_floor) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                    std::to_string(values.front()));
    }
}

DensityMatrix DensityMatrix::reduce(std::span<const std::string> keep) const {
    return DensityMatrix::unchecked(partial_trace(matrix_, layout_, keep), layout_.keep(keep));
}

DensityMatrix DensityMatrix::reduce(std::initializer_list<std::string> keep) const {
    const std::vector<std::string> names(keep);
    return reduce(std::span<const std::string>(names));
}

double DensityMatrix::purity() const {
    return real_expectation(matrix_, matrix_);
}

double HamiltonianTerm::beta(double boltzmann) const {
    return 1.0 / (boltzmann * temperature);
}

void HamiltonianTerm::validate() const {
    if (name.empty()) throw std::invalid_argument("HamiltonianTerm: empty name");
    if (!matrix.is_square()) {
        throw std::invalid_argument("HamiltonianTerm '" + name + "': matrix not square");
    }
    if (!is_hermitian(matrix, tol::hermitian)) {
        throw std::invalid_argument("HamiltonianTerm '" + name + "': matrix not Hermitian");
    }
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("HamiltonianTerm '" + name + "': temperature must be positive");
    }
}

GibbsResult gibbs_state(const ComplexMatrix& hamiltonian, double beta,
                        const std::string& factor_name) {
    if (!(beta > 0.0)) throw std::invalid_argument("gibbs_state: beta must be positive");
    const EigResult eig = herm_eig(hamiltonian);
    const double ground = eig.values.front();
    // Z' for the shifted spectrum; Z = Z' * exp(-beta * ground).
    double z_shifted = 0.0;
    for (const double v : eig.values) z_shifted += std::exp(-beta * (v - ground));
    const std::size_t n = hamiltonian.rows();
    ComplexMatrix scaled(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::exp(-beta * (eig.values[j] - ground)) / z_shifted;
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) = eig.vectors(i, j) * w;
    }
    ComplexMatrix rho = scaled * eig.vectors.adjoint();
    const double log_z = std::log(z_shifted) - beta * ground;
    return GibbsResult{DensityMatrix(std::move(rho), SubsystemLayout::single(factor_name, n)),
                       std::exp(log_z), log_z};
}

DensityMatrix build_initial_state(const EngineScenario& scenario) {
    const double beta = 1.0 / (scenario.boltzmann * scenario.system_temperature);
    ComplexMatrix state = gibbs_state(scenario.h_s_initial.matrix, beta).state.matrix();
    for (const auto& reservoir : scenario.reservoirs) {
        const double rbeta = reservoir.beta(scenario.boltzmann);
        state = kron(state, gibbs_state(reservoir.matrix, rbeta).state.matrix());
    }
    state = kron(state, scenario.rho_ab_initial.matrix());
    return DensityMatrix(std::move(state), scenario.full_layout());
}

namespace {

std::vector<cplx> ginibre(std::size_t count, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> values(count);
    for (auto& v : values) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = cplx{re, im};
    }
    return values;
}

} // namespace

ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("haar_random_unitary: dimension 0");
    std::mt19937_64 rng(seed);
    ComplexMatrix g(dim, dim, ginibre(dim * dim, rng));

    const auto n = static_cast<lapack_int>(dim);
    std::vector<cplx> tau(dim);
    lapack_int info = LAPACKE_zgeqrf(LAPACK_ROW_MAJOR, n, n, g.data(), n, tau.data());
    if (info != 0) throw std::runtime_error("haar_random_unitary: QR factorization failed");
    std::vector<cplx> phases(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const cplx d = g(j, j);
        const double mag = std::abs(d);
        phases[j] = mag > 0.0 ? d / mag : cplx{1.0, 0.0};
    }
    info = LAPACKE_zungqr(LAPACK_ROW_MAJOR, n, n, n, g.data(), n, tau.data());
    if (info != 0) throw std::runtime_error("haar_random_unitary: Q assembly failed");
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) g(i, j) *= phases[j];
    }
    return g;
}

DensityMatrix random_density_matrix(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    return random_density_matrix(SubsystemLayout::single("X", dim), rank, seed);
}

DensityMatrix random_density_matrix(SubsystemLayout layout, std::size_t rank, std::uint64_t seed) {
    const std::size_t dim = layout.total_dim();
    if (rank == 0 || rank > dim) {
        throw std::invalid_argument("random_density_matrix: rank must be in [1, dim]");
    }
    std::mt19937_64 rng(seed);
    ComplexMatrix g(dim, rank, ginibre(dim * rank, rng));
    ComplexMatrix rho = g * g.adjoint();
    rho *= cplx{1.0, 0.0} / rho.trace();
    return DensityMatrix(std::move(rho), std::move(layout));
}

DensityMatrix bell_state() {
    const double inv = 1.0 / std::sqrt(2.0);
    ComplexMatrix ket(4, 1);
    ket(0, 0) = cplx{inv, 0.0};
    ket(3, 0) = cplx{inv, 0.0};
    return pure_state(ket, SubsystemLayout({{"A", 2}, {"B", 2}}));
}

ComplexMatrix basis_ket(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("basis_ket: index out of range");
    ComplexMatrix ket(dim, 1);
    ket(index, 0) = cplx{1.0, 0.0};
    return ket;
}

DensityMatrix pure_state(const ComplexMatrix& ket, SubsystemLayout layout) {
    if (ket.cols() != 1 || ket.rows() != layout.total_dim()) {
        throw std::invalid_argument("pure_state: ket does not match layout dimension");
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < ket.rows(); ++i) norm2 += std::norm(ket(i, 0));
    if (norm2 <= 0.0) throw std::invalid_argument("pure_state: zero vector");
    ComplexMatrix rho(ket.rows(), ket.rows());
    for (std::size_t i = 0; i < ket.rows(); ++i) {
        for (std::size_t j = 0; j < ket.rows(); ++j) {
            rho(i, j) = ket(i, 0) * std::conj(ket(j, 0)) / norm2;
        }
    }
    return DensityMatrix(std::move(rho), std::move(layout));
}

} // namespace demon
