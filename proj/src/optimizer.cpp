#include "demon/optimizer.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "demon/logging.hpp"
#include "demon/nelder_mead.hpp"
#include "demon/seeding.hpp"
#include "demon/tensor.hpp"
#include "demon/tolerances.hpp"

namespace demon {

std::size_t generator_parameter_count(std::size_t dim) { return dim * dim; }

ComplexMatrix hermitian_from_parameters(std::span<const double> theta, std::size_t dim) {
    if (theta.size() != generator_parameter_count(dim)) {
        throw std::invalid_argument("hermitian_from_parameters: need dim^2 coordinates");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix g(dim, dim);
    std::size_t at = 0;
    for (std::size_t i = 0; i < dim; ++i) g(i, i) = cplx{theta[at++], 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            const double v = theta[at++] * inv_sqrt2;
            g(i, j) += cplx{v, 0.0};
            g(j, i) += cplx{v, 0.0};
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            const double v = theta[at++] * inv_sqrt2;
            g(i, j) += cplx{0.0, -v};
            g(j, i) += cplx{0.0, v};
        }
    }
    return g;
}

ComplexMatrix unitary_from_parameters(std::span<const double> theta, std::size_t dim) {
    const ComplexMatrix g = hermitian_from_parameters(theta, dim);
    return herm_func(g, [](double x) { return std::exp(cplx{0.0, x}); });
}

double feedback_work(const EngineScenario& scenario, const std::vector<ComplexMatrix>& feedback) {
    EngineScenario modified = scenario;
    modified.feedback = feedback;
    EvaluateOptions options;
    options.with_discord = false;
    return evaluate_engine(modified, options).w_ext;
}

namespace {

// Everything about the run that candidate feedbacks cannot change.
struct StagedObjective {
    double e_base = 0.0;
    ComplexMatrix h_final;                // total final term on S x reservoirs
    std::vector<double> probabilities;    // active branches only
    std::vector<ComplexMatrix> tau;       // matching conditional states on S x reservoirs
    std::size_t dim = 0;

    double work(std::span<const double> theta) const {
        const std::size_t block = generator_parameter_count(dim);
        double e_final = 0.0;
        for (std::size_t b = 0; b < tau.size(); ++b) {
            const ComplexMatrix u =
                unitary_from_parameters(theta.subspan(b * block, block), dim);
            e_final += probabilities[b] * real_expectation(h_final, tau[b].conjugated_by(u));
        }
        return e_base - e_final;
    }
};

StagedObjective stage_objective(const EngineScenario& scenario, const StageTrace& trace) {
    StagedObjective objective;
    objective.dim = scenario.interaction_dim();

    const SubsystemLayout sr = scenario.sr_layout();
    const std::string s_only[] = {"S"};
    objective.h_final = embed(scenario.h_s_final.matrix, sr, s_only);
    for (const auto& r : scenario.reservoirs) {
        const std::string name[] = {r.name};
        objective.h_final += embed(r.matrix, sr, name);
    }

    const std::vector<std::string> srn = scenario.sr_names();
    objective.e_base = real_expectation(embed(scenario.h_s_initial.matrix, sr, s_only),
                                        trace.initial.reduce(srn).matrix());
    for (const auto& r : scenario.reservoirs) {
        objective.e_base +=
            real_expectation(r.matrix, trace.initial.reduce({r.name}).matrix());
    }

    for (const auto& branch : trace.branches) {
        objective.probabilities.push_back(branch.probability);
        objective.tau.push_back(branch.state.reduce(srn).matrix());
    }
    return objective;
}

} // namespace

OptimizationResult optimize_feedback(const EngineScenario& scenario,
                                     const FeedbackOptimizationOptions& options) {
    if (options.budget == 0 || options.restarts == 0) {
        throw std::invalid_argument("optimize_feedback: budget and restarts must be positive");
    }
    const StageTrace trace = run_engine(scenario);
    BoundReport report = energy_accounting(scenario, trace);
    bound_evaluation(scenario, trace, report);

    const StagedObjective objective = stage_objective(scenario, trace);
    const std::size_t dim = objective.dim;
    const std::size_t block = generator_parameter_count(dim);
    const std::size_t total = block * objective.tau.size();

    OptimizationResult result;
    result.bound = report.work_bound;
    result.baseline_work = report.w_ext;

    const std::function<double(std::span<const double>)> minimize_me =
        [&](std::span<const double> theta) {
            const double w = objective.work(theta);
            if (w > result.bound + tol::bound_slack) {
                throw std::runtime_error("optimize_feedback: a candidate beat the work bound, "
                                         "which indicates a staging defect");
            }
            return -w;
        };

    NelderMeadOptions nm;
    nm.max_evaluations = std::max<std::size_t>(options.budget / options.restarts, total + 2);
    nm.initial_step = 0.1;

    std::vector<double> best(total, 0.0);
    double best_value = minimize_me(best);
    result.evaluations = 1;

    for (std::size_t restart = 0; restart < options.restarts; ++restart) {
        std::vector<double> start(total, 0.0);
        if (restart > 0) {
            std::mt19937_64 rng(derive_seed(options.seed, restart));
            std::normal_distribution<double> gauss(0.0, 0.5);
            for (double& x : start) x = gauss(rng);
        }
        const NelderMeadResult run = nelder_mead_minimize(minimize_me, start, nm);
        result.evaluations += run.evaluations;
        result.converged = result.converged || run.converged;
        if (run.value < best_value) {
            best_value = run.value;
            best = run.x;
        }
    }

    result.achieved_work = -best_value;
    result.gap = result.bound - result.achieved_work;

    result.parameters.assign(scenario.ancilla_dim(), {});
    result.feedback.assign(scenario.ancilla_dim(), ComplexMatrix::identity(dim));
    for (std::size_t b = 0; b < trace.branches.size(); ++b) {
        const std::size_t outcome = trace.branches[b].outcome;
        result.parameters[outcome].assign(best.begin() + static_cast<std::ptrdiff_t>(b * block),
                                          best.begin() + static_cast<std::ptrdiff_t>((b + 1) * block));
        result.feedback[outcome] = unitary_from_parameters(result.parameters[outcome], dim);
    }
    log_debug("optimize_feedback: work " + std::to_string(result.achieved_work) + " of bound " +
              std::to_string(result.bound) + " after " + std::to_string(result.evaluations) +
              " evaluations");
    return result;
}

} // namespace demon
