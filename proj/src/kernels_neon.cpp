#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cstddef>
#include <limits>

#include "ifslab/kernels.hpp"

// Two double lanes per iteration; same per-pair operation order as the
// scalar kernel, exact min/max folds.

namespace ifslab::kernels {

double min_dist_sq_neon(const double* const* coords, std::size_t dim,
                        std::size_t n, const double* x) {
    float64x2_t vbest = vdupq_n_f64(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t d = 0; d < dim; ++d) {
            float64x2_t diff = vsubq_f64(vdupq_n_f64(x[d]), vld1q_f64(coords[d] + i));
            acc = vaddq_f64(acc, vmulq_f64(diff, diff));
        }
        vbest = vminq_f64(vbest, acc);
    }
    double best = std::min(vgetq_lane_f64(vbest, 0), vgetq_lane_f64(vbest, 1));
    for (; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            double diff = x[d] - coords[d][i];
            acc += diff * diff;
        }
        best = std::min(best, acc);
    }
    return best;
}

double max_dist_sq_neon(const double* const* coords, std::size_t dim,
                        std::size_t n, const double* x) {
    float64x2_t vbest = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t d = 0; d < dim; ++d) {
            float64x2_t diff = vsubq_f64(vdupq_n_f64(x[d]), vld1q_f64(coords[d] + i));
            acc = vaddq_f64(acc, vmulq_f64(diff, diff));
        }
        vbest = vmaxq_f64(vbest, acc);
    }
    double best = std::max(vgetq_lane_f64(vbest, 0), vgetq_lane_f64(vbest, 1));
    for (; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            double diff = x[d] - coords[d][i];
            acc += diff * diff;
        }
        best = std::max(best, acc);
    }
    return best;
}

}  // namespace ifslab::kernels

#endif  // __aarch64__
