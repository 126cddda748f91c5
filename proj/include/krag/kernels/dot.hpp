#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace krag::kernels {

// Similarity scores are defined as the 8-lane blocked float dot product:
// lane l accumulates elements i with i % 8 == l in increasing i, the tail
// is zero-padded, and the eight lane sums are reduced in the fixed order
//   (l0+l4, l1+l5, l2+l6, l3+l7) -> ((l0+l4)+(l2+l6), (l1+l5)+(l3+l7)) -> sum.
// Every variant performs the identical sequence of IEEE single-precision
// mul/add operations, so results are bit-exact across scalar and SIMD paths.

enum class Kernel {
    scalar,
    avx2,
    neon,
};

const char* kernel_name(Kernel k);

float dot_scalar(const float* a, const float* b, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
float dot_avx2(const float* a, const float* b, std::size_t n);
#endif
#if defined(__aarch64__)
float dot_neon(const float* a, const float* b, std::size_t n);
#endif

// Best kernel supported by the running CPU.
Kernel detect_kernel();

// Kernel used by dot(); detect_kernel() unless overridden.
Kernel active_kernel();

// Test hook. nullopt restores runtime detection.
void set_kernel_override(std::optional<Kernel> k);

float dot(std::span<const float> a, std::span<const float> b);

}  // namespace krag::kernels
