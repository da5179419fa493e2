#include "demon/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "demon/nelder_mead.hpp"
#include "demon/tensor.hpp"
#include "demon/tolerances.hpp"

namespace demon {

namespace {

double clip_nonnegative(double value, const char* what, double floor = tol::negative_dust) {
    if (value < -floor) {
        throw std::runtime_error(std::string(what) + ": negative value " + std::to_string(value) +
                                 " exceeds tolerance");
    }
    return std::max(value, 0.0);
}

std::vector<std::string> other_factors(const SubsystemLayout& layout, const std::string& except) {
    std::vector<std::string> names;
    for (const auto& f : layout.factors()) {
        if (f.name != except) names.push_back(f.name);
    }
    return names;
}

} // namespace

MeasurementBasis::MeasurementBasis(std::string label, ComplexMatrix vectors)
    : label_(std::move(label)), vectors_(std::move(vectors)) {
    if (vectors_.rows() == 0 || vectors_.cols() != vectors_.rows()) {
        throw std::invalid_argument("MeasurementBasis '" + label_ +
                                    "': need exactly dim orthonormal vectors");
    }
    if (!is_unitary(vectors_, tol::unitary)) {
        throw std::invalid_argument("MeasurementBasis '" + label_ +
                                    "': vectors are not orthonormal within tolerance");
    }
}

MeasurementBasis MeasurementBasis::computational(std::size_t dim) {
    return MeasurementBasis("computational", ComplexMatrix::identity(dim));
}

MeasurementBasis MeasurementBasis::from_unitary(std::string label, const ComplexMatrix& u) {
    return MeasurementBasis(std::move(label), u);
}

MeasurementBasis MeasurementBasis::from_bloch(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx phase{std::cos(phi), std::sin(phi)};
    ComplexMatrix v(2, 2);
    v(0, 0) = cplx{c, 0.0};
    v(1, 0) = phase * s;
    v(0, 1) = -std::conj(phase) * s;
    v(1, 1) = cplx{c, 0.0};
    return MeasurementBasis("bloch", std::move(v));
}

MeasurementBasis MeasurementBasis::hadamard() {
    const double inv = 1.0 / std::sqrt(2.0);
    ComplexMatrix v(2, 2);
    v(0, 0) = v(1, 0) = v(0, 1) = cplx{inv, 0.0};
    v(1, 1) = cplx{-inv, 0.0};
    return MeasurementBasis("hadamard", std::move(v));
}

ComplexMatrix MeasurementBasis::ket(std::size_t k) const {
    if (k >= count()) throw std::invalid_argument("MeasurementBasis: outcome index out of range");
    ComplexMatrix v(dim(), 1);
    for (std::size_t i = 0; i < dim(); ++i) v(i, 0) = vectors_(i, k);
    return v;
}

ComplexMatrix MeasurementBasis::projector(std::size_t k) const {
    const ComplexMatrix v = ket(k);
    ComplexMatrix p(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) {
            p(i, j) = v(i, 0) * std::conj(v(j, 0));
        }
    }
    return p;
}

double vn_entropy(const ComplexMatrix& rho) {
    const auto values = herm_eigenvalues(rho);
    double s = 0.0;
    for (const double v : values) {
        if (v < -tol::negative_dust) {
            throw std::runtime_error("vn_entropy: eigenvalue " + std::to_string(v) +
                                     " below tolerance");
        }
        if (v > tol::eigen_clip) s -= v * std::log(v);
    }
    return clip_nonnegative(s, "vn_entropy");
}

double vn_entropy(const DensityMatrix& rho) { return vn_entropy(rho.matrix()); }

double shannon_entropy(std::span<const double> probabilities) {
    double sum = 0.0;
    double s = 0.0;
    for (const double p : probabilities) {
        if (p < -1e-12) {
            throw std::invalid_argument("shannon_entropy: negative probability");
        }
        sum += p;
        if (p > tol::eigen_clip) s -= p * std::log(p);
    }
    if (std::abs(sum - 1.0) > tol::equality) {
        throw std::invalid_argument("shannon_entropy: probabilities sum to " + std::to_string(sum));
    }
    return s;
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    if (!rho.same_shape(sigma) || !rho.is_square()) {
        throw std::invalid_argument("relative_entropy: shape mismatch");
    }
    const EigResult sig = herm_eig(sigma);
    const std::size_t n = rho.rows();

    double cross = 0.0;   // tr(rho ln sigma) over sigma's support
    double leak = 0.0;    // rho weight on sigma's null space
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexMatrix v = [&] {
            ComplexMatrix col(n, 1);
            for (std::size_t i = 0; i < n; ++i) col(i, 0) = sig.vectors(i, j);
            return col;
        }();
        // <v_j| rho |v_j>
        const ComplexMatrix rv = rho * v;
        cplx w{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) w += std::conj(v(i, 0)) * rv(i, 0);
        const double weight = w.real();
        if (sig.values[j] > tol::eigen_clip) {
            cross += weight * std::log(sig.values[j]);
        } else {
            leak += std::max(weight, 0.0);
        }
    }
    if (leak > tol::support_leak) {
        return std::numeric_limits<double>::infinity();
    }
    const double s = -vn_entropy(rho) - cross;
    return clip_nonnegative(s, "relative_entropy");
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return relative_entropy(rho.matrix(), sigma.matrix());
}

namespace {

void check_partition(const SubsystemLayout& layout, std::span<const std::string> x,
                     std::span<const std::string> y, const char* who) {
    for (const auto& n : x) {
        if (std::find(y.begin(), y.end(), n) != y.end()) {
            throw std::invalid_argument(std::string(who) + ": factor '" + n +
                                        "' appears on both sides");
        }
    }
    if (x.size() + y.size() != layout.factor_count()) {
        throw std::invalid_argument(std::string(who) + ": name sets must cover the layout " +
                                    layout.describe());
    }
    for (const auto& n : x) layout.index_of(n);
    for (const auto& n : y) layout.index_of(n);
}

} // namespace

double mutual_information(const DensityMatrix& rho, std::span<const std::string> part_x,
                          std::span<const std::string> part_y) {
    check_partition(rho.layout(), part_x, part_y, "mutual_information");
    const double sx = vn_entropy(rho.reduce(part_x));
    const double sy = vn_entropy(rho.reduce(part_y));
    const double sxy = vn_entropy(rho);
    return clip_nonnegative(sx + sy - sxy, "mutual_information");
}

double mutual_information(const DensityMatrix& rho, std::initializer_list<std::string> part_x,
                          std::initializer_list<std::string> part_y) {
    const std::vector<std::string> x(part_x), y(part_y);
    return mutual_information(rho, std::span<const std::string>(x),
                              std::span<const std::string>(y));
}

double conditional_entropy(const DensityMatrix& rho, std::span<const std::string> of,
                           std::span<const std::string> given) {
    check_partition(rho.layout(), of, given, "conditional_entropy");
    return vn_entropy(rho) - vn_entropy(rho.reduce(given));
}

double conditional_entropy(const DensityMatrix& rho, std::initializer_list<std::string> of,
                           std::initializer_list<std::string> given) {
    const std::vector<std::string> a(of), b(given);
    return conditional_entropy(rho, std::span<const std::string>(a),
                               std::span<const std::string>(b));
}

std::vector<MeasurementBranch> measurement_branches(const ComplexMatrix& rho,
                                                    const SubsystemLayout& layout,
                                                    const std::string& factor,
                                                    const MeasurementBasis& basis) {
    if (basis.dim() != layout.dim_of(factor)) {
        throw std::invalid_argument("measurement_branches: basis does not match factor '" +
                                    factor + "'");
    }
    std::vector<MeasurementBranch> branches;
    for (std::size_t k = 0; k < basis.count(); ++k) {
        ComplexMatrix cond = contract_factor(rho, layout, factor, basis.ket(k));
        const double p = cond.trace().real();
        if (p < tol::branch_skip) continue;
        cond *= cplx{1.0 / p, 0.0};
        branches.push_back(MeasurementBranch{k, p, std::move(cond)});
    }
    return branches;
}

double measured_conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis,
                                    const std::string& measured_factor) {
    const auto& layout = rho.layout();
    if (basis.dim() != layout.dim_of(measured_factor)) {
        throw std::invalid_argument("measured_conditional_entropy: basis does not match factor");
    }
    const std::string names[] = {measured_factor};
    ComplexMatrix post(rho.dim(), rho.dim());
    for (std::size_t k = 0; k < basis.count(); ++k) {
        const ComplexMatrix pk = embed(basis.projector(k), layout, names);
        post += pk * rho.matrix() * pk;
    }
    const auto memory = other_factors(layout, measured_factor);
    const double s_memory = vn_entropy(rho.reduce(memory));
    return vn_entropy(post) - s_memory;
}

namespace {

// S(rho_B) - sum_k p_k S(rho_B^k) for a measurement on `factor`.
double classical_correlation(const ComplexMatrix& rho, const SubsystemLayout& layout,
                             const std::string& factor, double s_memory,
                             const MeasurementBasis& basis) {
    double s_cond = 0.0;
    for (const auto& branch : measurement_branches(rho, layout, factor, basis)) {
        s_cond += branch.probability * vn_entropy(branch.conditional);
    }
    return s_memory - s_cond;
}

} // namespace

DiscordDecomposition discord_decomposition(const DensityMatrix& rho_ab, bool optimize,
                                           const std::optional<MeasurementBasis>& basis_hint) {
    const auto& layout = rho_ab.layout();
    if (layout.factor_count() != 2) {
        throw std::invalid_argument("discord_decomposition: state must be bipartite, got " +
                                    layout.describe());
    }
    const std::string measured = layout.factors()[0].name;
    const std::string memory = layout.factors()[1].name;
    const std::size_t dim_a = layout.factors()[0].dim;

    const double mutual = mutual_information(rho_ab, {measured}, {memory});
    const double s_memory = vn_entropy(rho_ab.reduce({memory}));

    const auto eval = [&](const MeasurementBasis& b) {
        return classical_correlation(rho_ab.matrix(), layout, measured, s_memory, b);
    };

    MeasurementBasis best_basis = basis_hint ? *basis_hint : MeasurementBasis::computational(dim_a);
    if (basis_hint && basis_hint->dim() != dim_a) {
        throw std::invalid_argument("discord_decomposition: hint basis dimension mismatch");
    }
    double best = eval(best_basis);
    bool optimized = false;

    if (optimize) {
        if (dim_a != 2) {
            if (!basis_hint) {
                throw std::invalid_argument(
                    "discord_decomposition: basis search is only implemented for a qubit "
                    "measured factor; provide a basis hint");
            }
        } else {
            constexpr std::size_t grid = 64;
            double seed_theta = 0.0, seed_phi = 0.0;
            for (std::size_t it = 0; it < grid; ++it) {
                const double theta = (static_cast<double>(it) + 0.5) * M_PI / grid;
                for (std::size_t ip = 0; ip < grid; ++ip) {
                    const double phi = static_cast<double>(ip) * 2.0 * M_PI / grid;
                    const double j = eval(MeasurementBasis::from_bloch(theta, phi));
                    if (j > best) {
                        best = j;
                        seed_theta = theta;
                        seed_phi = phi;
                        best_basis = MeasurementBasis::from_bloch(theta, phi);
                    }
                }
            }
            NelderMeadOptions opts;
            opts.max_evaluations = 400;
            opts.x_tolerance = 1e-9;
            opts.f_tolerance = tol::discord_opt * 1e-2;
            opts.initial_step = M_PI / grid;
            const double start[] = {seed_theta, seed_phi};
            const auto refined = nelder_mead_minimize(
                [&](std::span<const double> x) {
                    return -eval(MeasurementBasis::from_bloch(x[0], x[1]));
                },
                start, opts);
            if (-refined.value > best) {
                best = -refined.value;
                best_basis = MeasurementBasis::from_bloch(refined.x[0], refined.x[1]);
            }
            optimized = true;
        }
    }

    // The search maximizes a quantity bounded by the mutual information, so
    // the remainder can only be negative through rounding.
    const double discord =
        clip_nonnegative(mutual - best, "discord_decomposition", tol::bound_slack);
    return DiscordDecomposition{mutual, best, discord, std::move(best_basis), optimized};
}

} // namespace demon
