#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "demon/complex_matrix.hpp"
#include "demon/layout.hpp"
#include "demon/tensor.hpp"

namespace demon {

struct EngineScenario;

// Valid quantum state: Hermitian, unit trace, positive semidefinite, with a
// named factorization. Construction enforces the invariants.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout);

    // Skips validation; reserved for internal construction of states that are
    // valid by the algebra that produced them.
    static DensityMatrix unchecked(ComplexMatrix matrix, SubsystemLayout layout);

    const ComplexMatrix& matrix() const { return matrix_; }
    const SubsystemLayout& layout() const { return layout_; }
    std::size_t dim() const { return matrix_.rows(); }

    // Partial trace keeping the named factors.
    DensityMatrix reduce(std::span<const std::string> keep) const;
    DensityMatrix reduce(std::initializer_list<std::string> keep) const;

    double purity() const;

    void validate() const;

private:
    DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout, bool checked);

    ComplexMatrix matrix_;
    SubsystemLayout layout_;
};

// One local Hamiltonian together with the temperature of the bath it is
// attached to (for the system term, the preparation temperature).
struct HamiltonianTerm {
    std::string name;
    ComplexMatrix matrix;
    double temperature = 1.0;

    double beta(double boltzmann = 1.0) const;
    void validate() const;
};

struct GibbsResult {
    DensityMatrix state;
    double partition_function;
    double log_partition;
};

// exp(-beta H) / Z. The spectrum is shifted by its minimum before
// exponentiation so the partition function cannot overflow for deep spectra;
// log_partition is always finite.
GibbsResult gibbs_state(const ComplexMatrix& hamiltonian, double beta,
                        const std::string& factor_name = "S");

// Product state Gibbs(S) x Gibbs(R_1) x ... x Gibbs(R_n) x rho_ab in the
// canonical factor order S, R..., A, B.
DensityMatrix build_initial_state(const EngineScenario& scenario);

// QR of a complex Ginibre sample with the R-diagonal phase correction, so the
// distribution is the Haar measure. Deterministic for a fixed seed.
ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed);

// G G^dagger / tr(G G^dagger) with G a dim x rank Ginibre sample.
DensityMatrix random_density_matrix(std::size_t dim, std::size_t rank, std::uint64_t seed);
DensityMatrix random_density_matrix(SubsystemLayout layout, std::size_t rank, std::uint64_t seed);

// (|00> + |11>)/sqrt(2) on A(2) x B(2).
DensityMatrix bell_state();

// Column vector |index> of the given dimension.
ComplexMatrix basis_ket(std::size_t dim, std::size_t index);

// Rank-1 density matrix |psi><psi| from an unnormalized vector.
DensityMatrix pure_state(const ComplexMatrix& ket, SubsystemLayout layout);

} // namespace demon
