#include "demon/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace demon::kernels {

namespace {

constexpr int kUnresolved = -1;

std::atomic<int> g_backend{kUnresolved};

bool cpu_has_avx2() {
#if defined(DEMON_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend resolve() {
    Backend picked = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("DEMON_ENGINE_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) {
            picked = Backend::scalar;
        } else if (std::strcmp(env, "avx2") == 0) {
            picked = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
        }
        // anything else, including "auto", keeps the probed default
    }
    return picked;
}

} // namespace

Backend active_backend() {
    int current = g_backend.load(std::memory_order_acquire);
    if (current == kUnresolved) {
        current = static_cast<int>(resolve());
        g_backend.store(current, std::memory_order_release);
    }
    return static_cast<Backend>(current);
}

void force_backend(Backend backend) {
    if (backend == Backend::avx2 && !cpu_has_avx2()) backend = Backend::scalar;
    g_backend.store(static_cast<int>(backend), std::memory_order_release);
}

void reset_backend() { g_backend.store(kUnresolved, std::memory_order_release); }

bool avx2_supported() { return cpu_has_avx2(); }

const char* backend_name(Backend backend) {
    return backend == Backend::avx2 ? "avx2" : "scalar";
}

void matmul(cplx* c, const cplx* a, const cplx* b,
            std::size_t m, std::size_t k, std::size_t n) {
#if defined(DEMON_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        avx2::matmul(c, a, b, m, k, n);
        return;
    }
#endif
    scalar::matmul(c, a, b, m, k, n);
}

void scale_copy(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
#if defined(DEMON_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        avx2::scale_copy(dst, alpha, src, n);
        return;
    }
#endif
    scalar::scale_copy(dst, alpha, src, n);
}

void axpy(cplx* dst, cplx alpha, const cplx* src, std::size_t n) {
#if defined(DEMON_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        avx2::axpy(dst, alpha, src, n);
        return;
    }
#endif
    scalar::axpy(dst, alpha, src, n);
}

cplx conj_dot(const cplx* a, const cplx* b, std::size_t n) {
#if defined(DEMON_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        return avx2::conj_dot(a, b, n);
    }
#endif
    return scalar::conj_dot(a, b, n);
}

} // namespace demon::kernels
