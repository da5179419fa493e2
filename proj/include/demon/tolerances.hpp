#pragma once

// Central numeric policy. Every comparison tolerance used by the library lives
// here so that tests and implementation cannot drift apart.
namespace demon::tol {

// Acceptance thresholds for structural matrix properties.
inline constexpr double hermitian = 1e-9;
inline constexpr double unitary = 1e-9;
inline constexpr double trace_one = 1e-9;
// Most negative eigenvalue a density matrix may carry before rejection.
inline constexpr double psd_floor = 1e-10;

// Eigenvalues below this are treated as exact zeros inside spectral
// functionals (entropy, logarithms, support detection).
inline constexpr double eigen_clip = 1e-12;

// Quantities that are nonnegative by theory but computed by subtraction:
// values in [-negative_dust, 0) are clipped to 0, anything more negative is
// an internal error.
inline constexpr double negative_dust = 1e-9;

// Probability weight on the unsupported subspace of the second argument that
// makes a relative entropy +infinity.
inline constexpr double support_leak = 1e-9;

// Measurement outcomes with probability below this are dropped from the
// branch decomposition.
inline constexpr double branch_skip = 1e-12;

// Slack allowed when asserting the second-law style inequalities; covers
// accumulated eigensolver error across the entropy differences involved.
inline constexpr double bound_slack = 1e-8;

// Slack for quantities that are equalities by theory (marginal entropy
// preservation, probability normalization).
inline constexpr double equality = 1e-9;

// Convergence target for the classical-correlation basis search.
inline constexpr double discord_opt = 1e-8;

// Largest total Hilbert dimension a scenario may declare.
inline constexpr unsigned long max_dimension = 4096;

} // namespace demon::tol
