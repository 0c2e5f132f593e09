#pragma once

#include <cstddef>

// Low-level distance kernels over structure-of-arrays point data.
// coords is an array of dim pointers, coords[d][i] being coordinate d of
// point i. All variants of a kernel return bit-identical values: the SIMD
// paths evaluate each squared distance with the same per-pair operation
// order as the scalar reference and reduce with exact min/max only.

namespace ifslab::kernels {

enum class Variant { scalar, avx2, neon };

/// Best variant the running CPU supports.
Variant detect_variant();

/// Variant used by the dispatching entry points (default: detect_variant()).
Variant active_variant();
void set_variant(Variant v);
const char* variant_name(Variant v);

/// min over i < n of squared Euclidean distance from x to point i.
double min_dist_sq(const double* const* coords, std::size_t dim, std::size_t n,
                   const double* x);
double min_dist_sq_scalar(const double* const* coords, std::size_t dim,
                          std::size_t n, const double* x);
#if defined(__x86_64__)
double min_dist_sq_avx2(const double* const* coords, std::size_t dim,
                        std::size_t n, const double* x);
#endif
#if defined(__aarch64__)
double min_dist_sq_neon(const double* const* coords, std::size_t dim,
                        std::size_t n, const double* x);
#endif

/// max over i < n of squared Euclidean distance from x to point i.
double max_dist_sq(const double* const* coords, std::size_t dim, std::size_t n,
                   const double* x);
double max_dist_sq_scalar(const double* const* coords, std::size_t dim,
                          std::size_t n, const double* x);
#if defined(__x86_64__)
double max_dist_sq_avx2(const double* const* coords, std::size_t dim,
                        std::size_t n, const double* x);
#endif
#if defined(__aarch64__)
double max_dist_sq_neon(const double* const* coords, std::size_t dim,
                        std::size_t n, const double* x);
#endif

}  // namespace ifslab::kernels
