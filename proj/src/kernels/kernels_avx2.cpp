#if defined(DEMON_HAVE_AVX2)

#include "demon/kernels.hpp"

#include <algorithm>
#include <immintrin.h>

namespace demon::kernels::avx2 {

namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d are = _mm256_movedup_pd(a);
    const __m256d aim = _mm256_permute_pd(a, 0xF);
    const __m256d bsw = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

// Elementwise conj(a) * b; fmsubadd flips the sign pattern relative to cmul.
inline __m256d conj_mul(__m256d a, __m256d b) {
    const __m256d are = _mm256_movedup_pd(a);
    const __m256d aim = _mm256_permute_pd(a, 0xF);
    const __m256d bsw = _mm256_permute_pd(b, 0x5);
    return _mm256_fmsubadd_pd(are, b, _mm256_mul_pd(aim, bsw));
}

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

} // namespace

void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c, c + m * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        const cplx* arow = a + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx av = arow[p];
            const __m256d avv =
                _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(arow + p));
            const cplx* brow = b + p * n;
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d c0 = _mm256_loadu_pd(dp(crow + j));
                __m256d c1 = _mm256_loadu_pd(dp(crow + j + 2));
                c0 = _mm256_add_pd(c0, cmul(avv, _mm256_loadu_pd(dp(brow + j))));
                c1 = _mm256_add_pd(c1, cmul(avv, _mm256_loadu_pd(dp(brow + j + 2))));
                _mm256_storeu_pd(dp(crow + j), c0);
                _mm256_storeu_pd(dp(crow + j + 2), c1);
            }
            for (; j + 2 <= n; j += 2) {
                __m256d c0 = _mm256_loadu_pd(dp(crow + j));
                c0 = _mm256_add_pd(c0, cmul(avv, _mm256_loadu_pd(dp(brow + j))));
                _mm256_storeu_pd(dp(crow + j), c0);
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void scale_copy(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
    const cplx pair[2] = {alpha, alpha};
    const __m256d av = _mm256_loadu_pd(dp(pair));
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(dp(dst + i), cmul(av, _mm256_loadu_pd(dp(src + i))));
    }
    for (; i < n; ++i) dst[i] = alpha * src[i];
}

void axpy(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
    const cplx pair[2] = {alpha, alpha};
    const __m256d av = _mm256_loadu_pd(dp(pair));
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d d = _mm256_loadu_pd(dp(dst + i));
        d = _mm256_add_pd(d, cmul(av, _mm256_loadu_pd(dp(src + i))));
        _mm256_storeu_pd(dp(dst + i), d);
    }
    for (; i < n; ++i) dst[i] += alpha * src[i];
}

cplx conj_dot(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = _mm256_add_pd(acc,
                            conj_mul(_mm256_loadu_pd(dp(a + i)),
                                     _mm256_loadu_pd(dp(b + i))));
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d sum = _mm_add_pd(lo, hi);
    alignas(16) double parts[2];
    _mm_store_pd(parts, sum);
    cplx result{parts[0], parts[1]};
    for (; i < n; ++i) result += std::conj(a[i]) * b[i];
    return result;
}

} // namespace demon::kernels::avx2

#endif // DEMON_HAVE_AVX2
