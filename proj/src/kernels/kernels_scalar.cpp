#include "demon/kernels.hpp"

#include <algorithm>

namespace demon::kernels::scalar {

void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c, c + m * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        const cplx* arow = a + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx av = arow[p];
            const cplx* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                crow[j] += av * brow[j];
            }
        }
    }
}

void scale_copy(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = alpha * src[i];
}

void axpy(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += alpha * src[i];
}

cplx conj_dot(const cplx* a, const cplx* b, std::size_t n) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

} // namespace demon::kernels::scalar
