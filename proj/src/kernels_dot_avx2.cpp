#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace krag::kernels {

namespace {

// Zero-fills lanes >= rem so the tail add is a no-op in those lanes.
inline __m256i tail_mask(std::size_t rem) {
    alignas(32) std::int32_t m[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    for (std::size_t l = 0; l < rem; ++l) m[l] = -1;
    return _mm256_load_si256(reinterpret_cast<const __m256i*>(m));
}

}  // namespace

float dot_avx2(const float* a, const float* b, std::size_t n) {
    __m256 acc = _mm256_setzero_ps();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 va = _mm256_loadu_ps(a + i);
        __m256 vb = _mm256_loadu_ps(b + i);
        // mul+add rather than fma: keeps lanes bit-identical with dot_scalar.
        acc = _mm256_add_ps(acc, _mm256_mul_ps(va, vb));
    }
    if (i < n) {
        __m256i mask = tail_mask(n - i);
        __m256 va = _mm256_maskload_ps(a + i, mask);
        __m256 vb = _mm256_maskload_ps(b + i, mask);
        acc = _mm256_add_ps(acc, _mm256_mul_ps(va, vb));
    }
    // Reduction order matches the scalar reference exactly.
    __m128 lo = _mm256_castps256_ps128(acc);
    __m128 hi = _mm256_extractf128_ps(acc, 1);
    __m128 s = _mm_add_ps(lo, hi);                    // (l0+l4, l1+l5, l2+l6, l3+l7)
    __m128 sh = _mm_movehl_ps(s, s);                  // (l2+l6, l3+l7, ., .)
    __m128 t = _mm_add_ps(s, sh);                     // (t0, t1, ., .)
    __m128 t1 = _mm_shuffle_ps(t, t, _MM_SHUFFLE(1, 1, 1, 1));
    return _mm_cvtss_f32(_mm_add_ss(t, t1));
}

}  // namespace krag::kernels

#endif
