#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "demon/engine.hpp"
#include "demon/uncertainty.hpp"

namespace demon {

struct SweepOptions {
    std::size_t count = 100;
    std::uint64_t seed = 1;
    std::size_t dim_s = 2;
    std::size_t dim_r = 2;  // single reservoir
    std::size_t dim_a = 2;
    std::size_t dim_b = 2;
    std::size_t jobs = 1;
};

struct SweepRow {
    std::size_t index = 0;
    std::uint64_t item_seed = 0;
    double probability_sum = 0.0;
    double measurement_entropy_gain = 0.0;
    double chain_margin = 0.0;
    double work_bound_margin = 0.0;
    double klein_divergence = 0.0;
    double marginal_a_drift = 0.0;
    double marginal_b_drift = 0.0;
    double branch_identification_error = 0.0;
    double eur_margin = 0.0;
    double joint_margin = 0.0;
    double bound_sum_margin = 0.0;
    std::vector<std::string> violations;
};

struct SweepResult {
    SweepOptions options;
    std::vector<SweepRow> rows;
    std::size_t violation_rows = 0;
};

// Random engine pair drawn from the item seed alone: random spectra and
// temperatures, a Haar interaction, an identity pre-measurement step, Haar
// measurement bases and Haar feedback. The pair differs only after the
// interaction, so the uncertainty comparisons apply.
std::pair<EngineScenario, EngineScenario> random_engine_pair(std::uint64_t seed,
                                                             std::size_t dim_s, std::size_t dim_r,
                                                             std::size_t dim_a, std::size_t dim_b);

// Runs `count` independent pairs. The output is a pure function of the
// options; the job count only changes the wall time.
SweepResult run_sweep(const SweepOptions& options);

std::string sweep_to_csv(const SweepResult& result);

} // namespace demon
