#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace demon {

struct NelderMeadOptions {
    std::size_t max_evaluations = 2000;
    // Stop when the simplex diameter falls below this ...
    double x_tolerance = 1e-6;
    // ... or the spread of objective values does.
    double f_tolerance = 1e-9;
    double initial_step = 0.1;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

// Downhill simplex minimization with standard reflection/expansion/
// contraction/shrink coefficients. Deterministic: no internal randomness.
NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::span<const double> start,
                                      const NelderMeadOptions& options = {});

} // namespace demon
