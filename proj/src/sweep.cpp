#include "demon/sweep.hpp"

#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "demon/report.hpp"
#include "demon/seeding.hpp"

namespace demon {

namespace {

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = cplx{gauss(rng), 0.0};
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cplx v{gauss(rng) * 0.5, gauss(rng) * 0.5};
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

SweepRow make_row(std::size_t index, std::uint64_t item_seed, const SweepOptions& options) {
    const auto [first, second] = random_engine_pair(item_seed, options.dim_s, options.dim_r,
                                                    options.dim_a, options.dim_b);
    const TwoEngineReport report = two_engine_bounds(first, second);

    SweepRow row;
    row.index = index;
    row.item_seed = item_seed;
    row.probability_sum = report.first.probability_sum;
    row.measurement_entropy_gain = report.first.measurement_entropy_gain;
    row.chain_margin = report.first.chain_rhs - report.first.chain_lhs;
    row.work_bound_margin = report.first.work_bound - report.first.work_weighted;
    row.klein_divergence = report.first.klein_divergence;
    row.marginal_a_drift = report.first.marginal_a_drift;
    row.marginal_b_drift = report.first.marginal_b_drift;
    row.branch_identification_error = report.first.branch_identification_error;
    row.eur_margin = report.eur.margin;
    row.joint_margin = report.joint_margin;
    row.bound_sum_margin = report.bound_sum_margin;
    row.violations = check_violations(report);
    return row;
}

} // namespace

std::pair<EngineScenario, EngineScenario> random_engine_pair(std::uint64_t seed,
                                                             std::size_t dim_s, std::size_t dim_r,
                                                             std::size_t dim_a, std::size_t dim_b) {
    std::mt19937_64 rng(derive_seed(seed, 0));
    std::uniform_real_distribution<double> temp(0.5, 2.5);
    const double t_system = temp(rng);
    const double t_reservoir = temp(rng);

    const ComplexMatrix h_s_initial = random_hermitian(dim_s, rng);
    const ComplexMatrix h_s_final = random_hermitian(dim_s, rng);
    const ComplexMatrix h_r = random_hermitian(dim_r, rng);

    const SubsystemLayout ab({{"A", dim_a}, {"B", dim_b}});
    const DensityMatrix rho_ab = random_density_matrix(ab, dim_a * dim_b, derive_seed(seed, 1));

    const std::size_t sr = dim_s * dim_r;
    std::vector<ComplexMatrix> feedback_first, feedback_second;
    for (std::size_t k = 0; k < dim_a; ++k) {
        feedback_first.push_back(haar_random_unitary(sr, derive_seed(seed, 10 + k)));
        feedback_second.push_back(haar_random_unitary(sr, derive_seed(seed, 50 + k)));
    }

    EngineScenario first{"sweep-" + std::to_string(seed),
                         {"S", h_s_initial, t_system},
                         {"S", h_s_final, t_system},
                         t_system,
                         1.0,
                         {{"R1", h_r, t_reservoir}},
                         rho_ab,
                         haar_random_unitary(sr, derive_seed(seed, 2)),
                         ComplexMatrix::identity(dim_s * dim_a),
                         MeasurementBasis::from_unitary(
                             "haar", haar_random_unitary(dim_a, derive_seed(seed, 3))),
                         feedback_first,
                         seed};
    EngineScenario second = first;
    second.label += "-second";
    second.basis = MeasurementBasis::from_unitary(
        "haar", haar_random_unitary(dim_a, derive_seed(seed, 4)));
    second.feedback = feedback_second;
    return {std::move(first), std::move(second)};
}

SweepResult run_sweep(const SweepOptions& options) {
    SweepResult result;
    result.options = options;
    result.rows.resize(options.count);

    const std::size_t jobs = std::max<std::size_t>(options.jobs, 1);
    std::exception_ptr first_error;
    std::mutex error_lock;

    const auto worker = [&](std::size_t offset) {
        for (std::size_t i = offset; i < options.count; i += jobs) {
            try {
                result.rows[i] = make_row(i, derive_seed(options.seed, i), options);
            } catch (...) {
                const std::lock_guard<std::mutex> hold(error_lock);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
        for (auto& thread : pool) thread.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    for (const auto& row : result.rows) {
        if (!row.violations.empty()) ++result.violation_rows;
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "index,item_seed,dim_s,dim_r,dim_a,dim_b,probability_sum,measurement_entropy_gain,"
           "chain_margin,work_bound_margin,klein_divergence,marginal_a_drift,marginal_b_drift,"
           "branch_identification_error,eur_margin,joint_margin,bound_sum_margin,violations\n";
    const auto& o = result.options;
    for (const auto& row : result.rows) {
        out << row.index << ',' << row.item_seed << ',' << o.dim_s << ',' << o.dim_r << ','
            << o.dim_a << ',' << o.dim_b << ',' << format_number(row.probability_sum) << ','
            << format_number(row.measurement_entropy_gain) << ','
            << format_number(row.chain_margin) << ',' << format_number(row.work_bound_margin)
            << ',' << format_number(row.klein_divergence) << ','
            << format_number(row.marginal_a_drift) << ',' << format_number(row.marginal_b_drift)
            << ',' << format_number(row.branch_identification_error) << ','
            << format_number(row.eur_margin) << ',' << format_number(row.joint_margin) << ','
            << format_number(row.bound_sum_margin) << ',';
        for (std::size_t i = 0; i < row.violations.size(); ++i) {
            if (i != 0) out << ';';
            out << row.violations[i];
        }
        out << '\n';
    }
    out << "# summary: count=" << o.count << " seed=" << o.seed
        << " violation_rows=" << result.violation_rows << '\n';
    return out.str();
}

} // namespace demon
