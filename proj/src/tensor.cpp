#include "demon/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "demon/kernels.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace demon {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    const std::size_t bc = b.cols();
    for (std::size_t ai = 0; ai < a.rows(); ++ai) {
        for (std::size_t bi = 0; bi < b.rows(); ++bi) {
            cplx* orow = out.data() + (ai * b.rows() + bi) * out.cols();
            const cplx* brow = b.data() + bi * bc;
            for (std::size_t aj = 0; aj < a.cols(); ++aj) {
                kernels::scale_copy(orow + aj * bc, a(ai, aj), brow, bc);
            }
        }
    }
    return out;
}

namespace {

struct TraceIndexing {
    std::vector<std::size_t> keep_dims, keep_strides;
    std::vector<std::size_t> drop_dims, drop_strides;
    std::size_t keep_total = 1, drop_total = 1;
};

TraceIndexing build_indexing(const SubsystemLayout& layout, std::span<const std::string> keep) {
    for (const auto& n : keep) layout.index_of(n);
    TraceIndexing ix;
    const auto strides = layout.strides();
    const auto& factors = layout.factors();
    for (std::size_t f = 0; f < factors.size(); ++f) {
        const bool kept = std::find(keep.begin(), keep.end(), factors[f].name) != keep.end();
        if (kept) {
            ix.keep_dims.push_back(factors[f].dim);
            ix.keep_strides.push_back(strides[f]);
            ix.keep_total *= factors[f].dim;
        } else {
            ix.drop_dims.push_back(factors[f].dim);
            ix.drop_strides.push_back(strides[f]);
            ix.drop_total *= factors[f].dim;
        }
    }
    return ix;
}

// Flattened offsets of every digit combination of the given factor group.
std::vector<std::size_t> group_offsets(const std::vector<std::size_t>& dims,
                                       const std::vector<std::size_t>& strides,
                                       std::size_t total) {
    std::vector<std::size_t> offsets(total, 0);
    std::size_t repeat = total;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        repeat /= dims[f];
        std::size_t idx = 0;
        while (idx < total) {
            for (std::size_t d = 0; d < dims[f]; ++d) {
                for (std::size_t r = 0; r < repeat; ++r) offsets[idx++] += d * strides[f];
            }
        }
    }
    return offsets;
}

} // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::span<const std::string> keep) {
    if (!m.is_square() || m.rows() != layout.total_dim()) {
        throw std::invalid_argument("partial_trace: matrix does not match layout dimension");
    }
    const TraceIndexing ix = build_indexing(layout, keep);
    const auto keep_off = group_offsets(ix.keep_dims, ix.keep_strides, ix.keep_total);
    const auto drop_off = group_offsets(ix.drop_dims, ix.drop_strides, ix.drop_total);

    const std::size_t n = layout.total_dim();
    ComplexMatrix out(ix.keep_total, ix.keep_total);
    for (std::size_t r = 0; r < ix.keep_total; ++r) {
        for (std::size_t c = 0; c < ix.keep_total; ++c) {
            cplx acc{0.0, 0.0};
            for (std::size_t t = 0; t < ix.drop_total; ++t) {
                acc += m.data()[(keep_off[r] + drop_off[t]) * n + keep_off[c] + drop_off[t]];
            }
            out(r, c) = acc;
        }
    }
    return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const SubsystemLayout& layout,
                    std::span<const std::string> on) {
    if (!op.is_square()) throw std::invalid_argument("embed: operator not square");
    {
        // The operator's own factor order must be the layout order.
        std::size_t last = 0;
        bool first = true;
        for (const auto& n : on) {
            const std::size_t at = layout.index_of(n);
            if (!first && at <= last) {
                throw std::invalid_argument("embed: factor list must follow layout order");
            }
            last = at;
            first = false;
        }
    }
    const TraceIndexing ix = build_indexing(layout, on);
    if (op.rows() != ix.keep_total) {
        throw std::invalid_argument("embed: operator dimension does not match named factors");
    }
    const auto on_off = group_offsets(ix.keep_dims, ix.keep_strides, ix.keep_total);
    const auto id_off = group_offsets(ix.drop_dims, ix.drop_strides, ix.drop_total);

    const std::size_t n = layout.total_dim();
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < ix.keep_total; ++r) {
        for (std::size_t c = 0; c < ix.keep_total; ++c) {
            const cplx v = op(r, c);
            if (v == cplx{0.0, 0.0}) continue;
            for (std::size_t t = 0; t < ix.drop_total; ++t) {
                out.data()[(on_off[r] + id_off[t]) * n + on_off[c] + id_off[t]] = v;
            }
        }
    }
    return out;
}

ComplexMatrix contract_factor(const ComplexMatrix& m, const SubsystemLayout& layout,
                              const std::string& factor, const ComplexMatrix& ket) {
    if (!m.is_square() || m.rows() != layout.total_dim()) {
        throw std::invalid_argument("contract_factor: matrix does not match layout dimension");
    }
    const std::size_t fdim = layout.dim_of(factor);
    if (ket.cols() != 1 || ket.rows() != fdim) {
        throw std::invalid_argument("contract_factor: ket does not match factor dimension");
    }
    const std::string names[] = {factor};
    const TraceIndexing ix = build_indexing(layout, names);
    const auto f_off = group_offsets(ix.keep_dims, ix.keep_strides, ix.keep_total);
    const auto rest_off = group_offsets(ix.drop_dims, ix.drop_strides, ix.drop_total);

    const std::size_t n = layout.total_dim();
    ComplexMatrix out(ix.drop_total, ix.drop_total);
    for (std::size_t a = 0; a < fdim; ++a) {
        const cplx wa = std::conj(ket(a, 0));
        if (wa == cplx{0.0, 0.0}) continue;
        for (std::size_t b = 0; b < fdim; ++b) {
            const cplx w = wa * ket(b, 0);
            if (w == cplx{0.0, 0.0}) continue;
            for (std::size_t r = 0; r < ix.drop_total; ++r) {
                const cplx* mrow = m.data() + (f_off[a] + rest_off[r]) * n + f_off[b];
                cplx* orow = out.data() + r * ix.drop_total;
                for (std::size_t c = 0; c < ix.drop_total; ++c) {
                    orow[c] += w * mrow[rest_off[c]];
                }
            }
        }
    }
    return out;
}

namespace {

ComplexMatrix symmetrized(const ComplexMatrix& h) {
    ComplexMatrix s = h;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < h.cols(); ++j) {
            s(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
        }
    }
    return s;
}

void require_hermitian(const ComplexMatrix& h, double tolerance, const char* who) {
    if (!h.is_square()) throw std::invalid_argument(std::string(who) + ": matrix not square");
    if (!is_hermitian(h, tolerance)) {
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian within tolerance");
    }
}

} // namespace

EigResult herm_eig(const ComplexMatrix& h, double tolerance) {
    require_hermitian(h, tolerance, "herm_eig");
    ComplexMatrix work = symmetrized(h);
    const auto n = static_cast<lapack_int>(h.rows());
    std::vector<double> values(h.rows());
    const lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', n, work.data(), n,
                                           values.data());
    if (info != 0) {
        throw std::runtime_error("herm_eig: eigensolver failed with info " + std::to_string(info));
    }
    return EigResult{std::move(values), std::move(work)};
}

std::vector<double> herm_eigenvalues(const ComplexMatrix& h, double tolerance) {
    require_hermitian(h, tolerance, "herm_eigenvalues");
    ComplexMatrix work = symmetrized(h);
    const auto n = static_cast<lapack_int>(h.rows());
    std::vector<double> values(h.rows());
    const lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', n, work.data(), n,
                                           values.data());
    if (info != 0) {
        throw std::runtime_error("herm_eigenvalues: eigensolver failed with info " +
                                 std::to_string(info));
    }
    return values;
}

ComplexMatrix herm_func(const ComplexMatrix& h, const std::function<cplx(double)>& f,
                        double tolerance) {
    const EigResult eig = herm_eig(h, tolerance);
    const std::size_t n = h.rows();
    // scaled = V * f(diag)
    ComplexMatrix scaled(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx fj = f(eig.values[j]);
        for (std::size_t i = 0; i < n; ++i) {
            scaled(i, j) = eig.vectors(i, j) * fj;
        }
    }
    return scaled * eig.vectors.adjoint();
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tolerance) return false;
        }
    }
    return true;
}

bool is_unitary(const ComplexMatrix& m, double tolerance) {
    if (!m.is_square()) return false;
    const ComplexMatrix gram = m.adjoint() * m;
    ComplexMatrix residual = gram - ComplexMatrix::identity(m.rows());
    return residual.max_abs() <= tolerance;
}

bool is_psd(const ComplexMatrix& m, double tolerance) {
    if (!is_hermitian(m, tol::hermitian)) return false;
    const auto values = herm_eigenvalues(m);
    return values.empty() || values.front() >= -tolerance;
}

} // namespace demon
