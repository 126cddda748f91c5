#include "krag/kernels/dot.hpp"

#include <atomic>
#include <cassert>

namespace krag::kernels {

const char* kernel_name(Kernel k) {
    switch (k) {
        case Kernel::scalar: return "scalar";
        case Kernel::avx2: return "avx2";
        case Kernel::neon: return "neon";
    }
    return "unknown";
}

float dot_scalar(const float* a, const float* b, std::size_t n) {
    float lane[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        for (int l = 0; l < 8; ++l) lane[l] += a[i + l] * b[i + l];
    }
    if (i < n) {
        // Mirrors the SIMD masked tail: absent lanes contribute +0.0f.
        for (int l = 0; l < 8; ++l) {
            float prod = (i + static_cast<std::size_t>(l) < n) ? a[i + l] * b[i + l] : 0.0f;
            lane[l] += prod;
        }
    }
    float s0 = lane[0] + lane[4];
    float s1 = lane[1] + lane[5];
    float s2 = lane[2] + lane[6];
    float s3 = lane[3] + lane[7];
    float t0 = s0 + s2;
    float t1 = s1 + s3;
    return t0 + t1;
}

namespace {

std::atomic<int> g_override{-1};

Kernel detect_once() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return Kernel::avx2;
#endif
#if defined(__aarch64__)
    return Kernel::neon;
#endif
    return Kernel::scalar;
}

}  // namespace

Kernel detect_kernel() {
    static const Kernel detected = detect_once();
    return detected;
}

Kernel active_kernel() {
    int ov = g_override.load(std::memory_order_relaxed);
    if (ov >= 0) return static_cast<Kernel>(ov);
    return detect_kernel();
}

void set_kernel_override(std::optional<Kernel> k) {
    g_override.store(k ? static_cast<int>(*k) : -1, std::memory_order_relaxed);
}

float dot(std::span<const float> a, std::span<const float> b) {
    assert(a.size() == b.size());
    switch (active_kernel()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Kernel::avx2: return dot_avx2(a.data(), b.data(), a.size());
#endif
#if defined(__aarch64__)
        case Kernel::neon: return dot_neon(a.data(), b.data(), a.size());
#endif
        default: return dot_scalar(a.data(), b.data(), a.size());
    }
}

}  // namespace krag::kernels
