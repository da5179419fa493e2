#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "demon/engine.hpp"

namespace demon {

// dim*dim real coordinates for a Hermitian matrix in an orthonormal basis:
// the diagonal entries first, then the real and imaginary off-diagonal parts.
std::size_t generator_parameter_count(std::size_t dim);
ComplexMatrix hermitian_from_parameters(std::span<const double> theta, std::size_t dim);
// exp(i G(theta)); theta = 0 gives the identity.
ComplexMatrix unitary_from_parameters(std::span<const double> theta, std::size_t dim);

// Extracted work when the scenario runs with the given conditional unitaries
// in place of its own feedback.
double feedback_work(const EngineScenario& scenario, const std::vector<ComplexMatrix>& feedback);

struct FeedbackOptimizationOptions {
    std::size_t budget = 5000;    // total objective evaluations across restarts
    std::size_t restarts = 8;     // restart 0 starts from the identity
    std::uint64_t seed = 1;       // seeds the non-identity starting points
};

struct OptimizationResult {
    std::vector<std::vector<double>> parameters;  // per outcome; empty when never measured
    std::vector<ComplexMatrix> feedback;          // per outcome
    double baseline_work = 0.0;                   // with the scenario's own feedback
    double achieved_work = 0.0;
    double bound = 0.0;                           // feedback-independent ceiling
    double gap = 0.0;                             // bound - achieved_work
    std::size_t evaluations = 0;
    bool converged = false;                       // any restart met the simplex tolerances
};

// Searches the conditional feedback unitaries for maximal extracted work.
// The measurement statistics and the work bound do not depend on the
// feedback, so the search reuses the staged branches and only re-applies
// candidate unitaries. Deterministic for fixed options.
OptimizationResult optimize_feedback(const EngineScenario& scenario,
                                     const FeedbackOptimizationOptions& options = {});

} // namespace demon
