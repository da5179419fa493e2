#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "demon/complex_matrix.hpp"
#include "demon/states.hpp"

namespace demon {

// Complete rank-1 projective measurement on one factor, stored as the
// orthonormal columns of `vectors`.
class MeasurementBasis {
public:
    MeasurementBasis(std::string label, ComplexMatrix vectors);

    static MeasurementBasis computational(std::size_t dim);
    // Columns of a unitary.
    static MeasurementBasis from_unitary(std::string label, const ComplexMatrix& u);
    // Qubit basis from Bloch angles.
    static MeasurementBasis from_bloch(double theta, double phi);
    static MeasurementBasis hadamard();

    const std::string& label() const { return label_; }
    const ComplexMatrix& vectors() const { return vectors_; }
    std::size_t dim() const { return vectors_.rows(); }
    std::size_t count() const { return vectors_.cols(); }

    ComplexMatrix ket(std::size_t k) const;
    ComplexMatrix projector(std::size_t k) const;

private:
    std::string label_;
    ComplexMatrix vectors_;
};

// All entropies are in nats.
double vn_entropy(const ComplexMatrix& rho);
double vn_entropy(const DensityMatrix& rho);

double shannon_entropy(std::span<const double> probabilities);

// S(rho || sigma); +infinity when rho has weight on sigma's null space.
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

double mutual_information(const DensityMatrix& rho, std::span<const std::string> part_x,
                          std::span<const std::string> part_y);
double mutual_information(const DensityMatrix& rho, std::initializer_list<std::string> part_x,
                          std::initializer_list<std::string> part_y);

// S(of | given) = S(rho) - S(rho_given); the two name sets must partition the
// layout.
double conditional_entropy(const DensityMatrix& rho, std::span<const std::string> of,
                           std::span<const std::string> given);
double conditional_entropy(const DensityMatrix& rho, std::initializer_list<std::string> of,
                           std::initializer_list<std::string> given);

// Entropy of the post-measurement state minus the memory entropy: the
// conditional entropy of the recorded outcome given everything else.
double measured_conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis,
                                    const std::string& measured_factor);

struct MeasurementBranch {
    std::size_t outcome;
    double probability;
    ComplexMatrix conditional;  // normalized state of the unmeasured factors
};

// Branches of a rank-1 measurement on `factor`; outcomes below the
// probability floor are skipped.
std::vector<MeasurementBranch> measurement_branches(const ComplexMatrix& rho,
                                                    const SubsystemLayout& layout,
                                                    const std::string& factor,
                                                    const MeasurementBasis& basis);

struct DiscordDecomposition {
    double mutual_information;
    double classical_correlation;
    double discord;
    MeasurementBasis basis;   // basis achieving classical_correlation
    bool optimized;           // false when only a hint basis was evaluated
};

// Splits total correlation into the classical part (maximized over rank-1
// measurements on the first factor) and the quantum remainder. The search is
// exact for a qubit first factor; otherwise a basis hint is required and the
// result is a lower bound on the classical part.
DiscordDecomposition discord_decomposition(const DensityMatrix& rho_ab, bool optimize,
                                           const std::optional<MeasurementBasis>& basis_hint = {});

} // namespace demon
