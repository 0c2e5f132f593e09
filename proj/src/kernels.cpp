#include "ifslab/kernels.hpp"

#include <algorithm>
#include <limits>

namespace ifslab::kernels {

Variant detect_variant() {
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2")) return Variant::avx2;
#elif defined(__aarch64__)
    return Variant::neon;
#endif
    return Variant::scalar;
}

namespace {
Variant g_active = detect_variant();
}

Variant active_variant() { return g_active; }

void set_variant(Variant v) {
#if !defined(__x86_64__)
    if (v == Variant::avx2) v = Variant::scalar;
#endif
#if !defined(__aarch64__)
    if (v == Variant::neon) v = Variant::scalar;
#endif
    g_active = v;
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::avx2: return "avx2";
        case Variant::neon: return "neon";
        default: return "scalar";
    }
}

double min_dist_sq_scalar(const double* const* coords, std::size_t dim,
                          std::size_t n, const double* x) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            double diff = x[d] - coords[d][i];
            acc += diff * diff;
        }
        best = std::min(best, acc);
    }
    return best;
}

double max_dist_sq_scalar(const double* const* coords, std::size_t dim,
                          std::size_t n, const double* x) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            double diff = x[d] - coords[d][i];
            acc += diff * diff;
        }
        best = std::max(best, acc);
    }
    return best;
}

double min_dist_sq(const double* const* coords, std::size_t dim, std::size_t n,
                   const double* x) {
    switch (g_active) {
#if defined(__x86_64__)
        case Variant::avx2: return min_dist_sq_avx2(coords, dim, n, x);
#endif
#if defined(__aarch64__)
        case Variant::neon: return min_dist_sq_neon(coords, dim, n, x);
#endif
        default: return min_dist_sq_scalar(coords, dim, n, x);
    }
}

double max_dist_sq(const double* const* coords, std::size_t dim, std::size_t n,
                   const double* x) {
    switch (g_active) {
#if defined(__x86_64__)
        case Variant::avx2: return max_dist_sq_avx2(coords, dim, n, x);
#endif
#if defined(__aarch64__)
        case Variant::neon: return max_dist_sq_neon(coords, dim, n, x);
#endif
        default: return max_dist_sq_scalar(coords, dim, n, x);
    }
}

}  // namespace ifslab::kernels
