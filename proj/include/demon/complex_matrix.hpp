#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace demon {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Arithmetic goes through the kernel layer.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    cplx trace() const;
    double max_abs() const;
    double frobenius_norm() const;

    // u * (*this) * u^dagger
    ComplexMatrix conjugated_by(const ComplexMatrix& u) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx alpha);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
        lhs -= rhs;
        return lhs;
    }
    friend ComplexMatrix operator*(cplx alpha, ComplexMatrix m) {
        m *= alpha;
        return m;
    }
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;

    bool same_shape(const ComplexMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// max |a_ij - b_ij|; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// tr(a * b) without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Real part of tr(observable * state) for Hermitian pairs; throws if the
// imaginary residue exceeds the tolerance implied by the inputs.
double real_expectation(const ComplexMatrix& observable, const ComplexMatrix& state);

} // namespace demon
