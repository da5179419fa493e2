#pragma once

#include <complex>
#include <cstddef>

// Dense complex kernels on row-major interleaved storage. Scalar versions are
// the reference semantics; the AVX2 versions must agree with them to rounding
// error and are selected at runtime. Everything above this layer is written
// against the dispatched entry points.
namespace demon::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

// Backend picked at first use: DEMON_ENGINE_SIMD=scalar|avx2|auto consulted,
// then CPU support. Forcing an unavailable backend falls back to scalar.
Backend active_backend();
void force_backend(Backend backend);
void reset_backend();
bool avx2_supported();
const char* backend_name(Backend backend);

// c (m x n) = a (m x k) * b (k x n); c is overwritten, must not alias a or b.
void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n);
// dst = alpha * src
void scale_copy(cplx* dst, cplx alpha, const cplx* src, std::size_t n);
// dst += alpha * src
void axpy(cplx* dst, cplx alpha, const cplx* src, std::size_t n);
// sum_i conj(a[i]) * b[i]
cplx conj_dot(const cplx* a, const cplx* b, std::size_t n);

namespace scalar {
void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n);
void scale_copy(cplx* dst, cplx alpha, const cplx* src, std::size_t n);
void axpy(cplx* dst, cplx alpha, const cplx* src, std::size_t n);
cplx conj_dot(const cplx* a, const cplx* b, std::size_t n);
} // namespace scalar

#if defined(DEMON_HAVE_AVX2)
namespace avx2 {
void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n);
void scale_copy(cplx* dst, cplx alpha, const cplx* src, std::size_t n);
void axpy(cplx* dst, cplx alpha, const cplx* src, std::size_t n);
cplx conj_dot(const cplx* a, const cplx* b, std::size_t n);
} // namespace avx2
#endif

} // namespace demon::kernels
