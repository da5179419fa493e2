#pragma once

#include "demon/engine.hpp"
#include "demon/entropy.hpp"
#include "demon/states.hpp"

namespace demon {

// Largest squared overlap between any column of k_basis and any column
// of m_basis. Equals 1 for equal bases, 1/d for mutually unbiased ones.
double overlap_c(const MeasurementBasis& k_basis, const MeasurementBasis& m_basis);

struct EurReport {
    double overlap = 0.0;
    double lhs = 0.0;     // S(K|B) + S(M|B)
    double rhs = 0.0;     // ln(1/c) + S(A|B)
    double margin = 0.0;  // lhs - rhs, nonnegative up to roundoff
};

// Uncertainty relation for two measurements on the first factor of a
// bipartite state, conditioned on the second factor.
EurReport eur_check(const DensityMatrix& rho, const MeasurementBasis& k_basis,
                    const MeasurementBasis& m_basis);

struct TwoEngineReport {
    double overlap = 0.0;
    EurReport eur;                      // on the shared initial ancilla-memory state
    double joint_lhs = 0.0;             // S(ab after first measurement) + same for second
    double joint_rhs = 0.0;             // ln(1/c) + S(ab initial) + S(memory initial)
    double joint_margin = 0.0;
    double work_bound_first = 0.0;
    double work_bound_second = 0.0;
    double work_sum_lower_bound = 0.0;  // floor under the two bounds combined
    double bound_sum_margin = 0.0;
    BoundReport first;
    BoundReport second;
};

// Runs two engines that share everything up to the measurement and
// compares their bounds against the uncertainty floor. The scenarios
// must agree on the initial data and use an identity pre-measurement
// step, and may differ only in basis, feedback and final system term.
TwoEngineReport two_engine_bounds(const EngineScenario& first, const EngineScenario& second);

// Per-engine violations plus the uncertainty floors.
std::vector<std::string> check_violations(const TwoEngineReport& report);

} // namespace demon
