#pragma once

// Test-side reference implementations, written against the mathematical
// definitions with plain index loops. They share no code path with the
// library routines they check.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "demon/complex_matrix.hpp"

namespace oracle {

using demon::cplx;
using demon::ComplexMatrix;

inline std::vector<std::size_t> decode_index(std::size_t index,
                                             const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        digits[i] = index % dims[i];
        index /= dims[i];
    }
    return digits;
}

// Sum over every assignment of the dropped digits, entry by entry.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                   const std::vector<bool>& keep) {
    std::size_t total = 1, kept = 1;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        total *= dims[i];
        if (keep[i]) kept *= dims[i];
    }
    ComplexMatrix out(kept, kept);
    for (std::size_t r = 0; r < total; ++r) {
        const auto dr = decode_index(r, dims);
        for (std::size_t c = 0; c < total; ++c) {
            const auto dc = decode_index(c, dims);
            bool dropped_match = true;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                if (!keep[i] && dr[i] != dc[i]) {
                    dropped_match = false;
                    break;
                }
            }
            if (!dropped_match) continue;
            std::size_t kr = 0, kc = 0;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                if (!keep[i]) continue;
                kr = kr * dims[i] + dr[i];
                kc = kc * dims[i] + dc[i];
            }
            out(kr, kc) += m(r, c);
        }
    }
    return out;
}

inline ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx sum{0.0, 0.0};
            for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
            out(i, j) = sum;
        }
    }
    return out;
}

inline double inf_norm(const ComplexMatrix& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
        worst = std::max(worst, row);
    }
    return worst;
}

// Scaling and squaring with a Taylor series on the scaled matrix.
inline ComplexMatrix expm(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    int squarings = 0;
    double norm = inf_norm(m);
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    ComplexMatrix scaled = m;
    scaled *= cplx{std::ldexp(1.0, -squarings), 0.0};

    ComplexMatrix sum = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k < 64; ++k) {
        term = naive_product(term, scaled);
        term *= cplx{1.0 / k, 0.0};
        sum += term;
        if (inf_norm(term) < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) sum = naive_product(sum, sum);
    return sum;
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx{gauss(rng), gauss(rng)};
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
    const ComplexMatrix g = random_matrix(dim, dim, seed);
    ComplexMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
        }
    }
    return h;
}

// G G^dagger normalized to unit trace.
inline ComplexMatrix random_state(std::size_t dim, std::uint64_t seed) {
    const ComplexMatrix g = random_matrix(dim, dim, seed);
    ComplexMatrix rho = naive_product(g, g.adjoint());
    cplx tr{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) tr += rho(i, i);
    rho *= cplx{1.0, 0.0} / tr;
    return rho;
}

} // namespace oracle
