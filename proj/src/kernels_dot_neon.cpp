#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>

namespace krag::kernels {

float dot_neon(const float* a, const float* b, std::size_t n) {
    // Two 4-wide accumulators stand in for lanes 0-3 and 4-7 of the
    // 8-lane blocked order; vmulq+vaddq (no fused ops) so results stay
    // bit-identical with dot_scalar.
    float32x4_t acc_lo = vdupq_n_f32(0.0f);
    float32x4_t acc_hi = vdupq_n_f32(0.0f);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc_lo = vaddq_f32(acc_lo, vmulq_f32(vld1q_f32(a + i), vld1q_f32(b + i)));
        acc_hi = vaddq_f32(acc_hi, vmulq_f32(vld1q_f32(a + i + 4), vld1q_f32(b + i + 4)));
    }
    if (i < n) {
        float ta[8] = {0, 0, 0, 0, 0, 0, 0, 0};
        float tb[8] = {0, 0, 0, 0, 0, 0, 0, 0};
        for (std::size_t j = 0; i + j < n; ++j) {
            ta[j] = a[i + j];
            tb[j] = b[i + j];
        }
        acc_lo = vaddq_f32(acc_lo, vmulq_f32(vld1q_f32(ta), vld1q_f32(tb)));
        acc_hi = vaddq_f32(acc_hi, vmulq_f32(vld1q_f32(ta + 4), vld1q_f32(tb + 4)));
    }
    float32x4_t s = vaddq_f32(acc_lo, acc_hi);        // (l0+l4, l1+l5, l2+l6, l3+l7)
    float t0 = vgetq_lane_f32(s, 0) + vgetq_lane_f32(s, 2);
    float t1 = vgetq_lane_f32(s, 1) + vgetq_lane_f32(s, 3);
    return t0 + t1;
}

}  // namespace krag::kernels

#endif
