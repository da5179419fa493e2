#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "demon/complex_matrix.hpp"
#include "demon/entropy.hpp"
#include "demon/layout.hpp"
#include "demon/states.hpp"

namespace demon {

// One measurement-feedback cycle: prepare thermal S and reservoirs alongside
// the ancilla/memory pair, couple S to the reservoirs, optionally rotate S
// with the ancilla, measure the ancilla, then steer S and the reservoirs
// with an outcome-conditioned unitary.
struct EngineScenario {
    std::string label;
    HamiltonianTerm h_s_initial;           // system term, preparation temperature
    HamiltonianTerm h_s_final;
    double system_temperature = 1.0;
    double boltzmann = 1.0;                // rescales every energy-valued output
    std::vector<HamiltonianTerm> reservoirs;
    DensityMatrix rho_ab_initial;          // factors A (ancilla), B (memory)
    ComplexMatrix u_interaction;           // acts on S x reservoirs
    ComplexMatrix u_premeasure;            // acts on S x A
    MeasurementBasis basis;                // rank-1 measurement on A
    std::vector<ComplexMatrix> feedback;   // one unitary on S x reservoirs per outcome
    std::uint64_t seed = 0;

    std::size_t system_dim() const { return h_s_initial.matrix.rows(); }
    std::size_t ancilla_dim() const { return rho_ab_initial.layout().dim_of("A"); }
    std::size_t memory_dim() const { return rho_ab_initial.layout().dim_of("B"); }
    std::size_t interaction_dim() const;

    // Canonical order: S, reservoirs in declaration order, A, B.
    SubsystemLayout full_layout() const;
    SubsystemLayout sr_layout() const;
    std::vector<std::string> sr_names() const;

    double beta() const { return 1.0 / (boltzmann * system_temperature); }
    void validate() const;
};

struct StageBranch {
    std::size_t outcome;
    double probability;
    DensityMatrix state;  // on S, reservoirs, B; normalized
};

struct StageTrace {
    DensityMatrix initial;      // thermal product with the A,B pair
    DensityMatrix interacted;   // after the S-reservoir unitary
    DensityMatrix measured;     // after the S-A unitary and the measurement
    DensityMatrix final_state;  // after conditional feedback

    std::vector<double> outcome_probabilities;  // every outcome, in basis order
    std::vector<StageBranch> branches;          // outcomes above the probability floor

    DensityMatrix sr_initial, sr_final;
    DensityMatrix ab_initial, ab_measured;
    DensityMatrix a_initial, a_measured, a_final;
    DensityMatrix b_initial, b_measured, b_final;
};

StageTrace run_engine(const EngineScenario& scenario);

// The conditional feedback unitary assembled over the full register;
// exposed for staging tests.
ComplexMatrix assemble_feedback_unitary(const EngineScenario& scenario);

struct CarnotReport {
    std::size_t hot_index, cold_index;
    double t_hot, t_cold;
    double heat_hot, heat_cold;
    double carnot_efficiency;          // 1 - T_cold / T_hot
    double work_bound;                 // textbook bound on extracted work
    std::optional<double> efficiency;  // w_ext / heat_hot when heat flows
    bool delta_u_negligible;           // bound is only a theorem when true
};

struct DiscordForm {
    double mutual_initial;
    double classical_initial;
    double discord_initial;
    double classical_measured;         // at the engine's own basis
    double discord_measured;           // vanishes for the recorded state
    double correlation_budget;         // dS - dJ + initial discord
    double bound_via_decomposition;    // -dF + kT * correlation_budget
};

struct BoundReport {
    double e_s_initial = 0.0, e_s_final = 0.0, delta_u_s = 0.0;
    std::vector<double> reservoir_energy_initial, reservoir_energy_final, heat;
    double heat_total = 0.0;
    double z_s_initial = 0.0, z_s_final = 0.0;
    double f_s_initial = 0.0, f_s_final = 0.0, delta_f_s = 0.0;

    double delta_s_a = 0.0, delta_s_b = 0.0, delta_mutual = 0.0;
    double w_ext = 0.0;           // total heat minus system energy gain
    double work_weighted = 0.0;   // temperature-weighted extraction
    double work_bound = 0.0;      // -dF_S + kT (dS - dI)

    double measurement_entropy_gain = 0.0;       // nonnegative
    double chain_lhs = 0.0, chain_rhs = 0.0;     // entropy flow through S,R vs A,B
    double klein_divergence = 0.0;               // final S,R state vs thermal reference
    double marginal_a_drift = 0.0, marginal_b_drift = 0.0;  // zero within tolerance
    double branch_identification_error = 0.0;
    bool branch_check_applicable = false;        // only when the S-A unitary is trivial
    double probability_sum = 0.0;

    std::optional<CarnotReport> carnot;
    std::optional<DiscordForm> discord;
};

struct EvaluateOptions {
    // Run the discord decomposition of the initial A,B state (single
    // reservoir at most, qubit ancilla).
    bool with_discord = true;
};

// Energies, heats, and free energies from the stage trace.
BoundReport energy_accounting(const EngineScenario& scenario, const StageTrace& trace);
// Entropic quantities and every inequality margin; extends the report.
void bound_evaluation(const EngineScenario& scenario, const StageTrace& trace,
                      BoundReport& report);
// Correlation split of the work bound; requires at most one reservoir and a
// qubit ancilla.
DiscordForm discord_form(const EngineScenario& scenario, const StageTrace& trace,
                         const BoundReport& report);

BoundReport evaluate_engine(const EngineScenario& scenario, const EvaluateOptions& options = {});

// Human-readable descriptions of every inequality or consistency check the
// report fails; empty means the run is clean.
std::vector<std::string> check_violations(const BoundReport& report);

} // namespace demon
