#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "krag/kernels/dot.hpp"

using namespace krag;

namespace {

std::vector<float> random_vec(std::mt19937& rng, size_t n) {
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    std::vector<float> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

bool bit_equal(float a, float b) {
    return std::memcmp(&a, &b, sizeof(float)) == 0;
}

// Straightforward long-double accumulation, used only to sanity-check the
// blocked definition against ordinary summation.
long double dot_ld(const std::vector<float>& a, const std::vector<float>& b) {
    long double s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += static_cast<long double>(a[i]) * static_cast<long double>(b[i]);
    return s;
}

}  // namespace

TEST_CASE("scalar kernel handles degenerate sizes") {
    std::vector<float> a{2.0f}, b{3.0f};
    CHECK(kernels::dot_scalar(a.data(), b.data(), 0) == 0.0f);
    CHECK(kernels::dot_scalar(a.data(), b.data(), 1) == 6.0f);
}

TEST_CASE("scalar kernel close to long-double reference") {
    std::mt19937 rng(7);
    for (size_t n : {3u, 8u, 64u, 256u, 1000u}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        long double ref = dot_ld(a, b);
        float got = kernels::dot_scalar(a.data(), b.data(), n);
        CHECK(std::abs(static_cast<double>(ref - got)) < 1e-3);
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernel is bit-exact against the scalar reference") {
    if (kernels::detect_kernel() != kernels::Kernel::avx2) {
        MESSAGE("avx2 not available on this host, skipping");
        return;
    }
    std::mt19937 rng(11);
    for (size_t n : {0u, 1u, 2u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 255u, 256u, 257u, 1021u}) {
        for (int rep = 0; rep < 20; ++rep) {
            auto a = random_vec(rng, n);
            auto b = random_vec(rng, n);
            float s = kernels::dot_scalar(a.data(), b.data(), n);
            float v = kernels::dot_avx2(a.data(), b.data(), n);
            CAPTURE(n);
            CAPTURE(rep);
            CHECK(bit_equal(s, v));
        }
    }
}

TEST_CASE("avx2 kernel handles signed zeros like the scalar reference") {
    if (kernels::detect_kernel() != kernels::Kernel::avx2) return;
    std::vector<float> a{0.0f, -0.0f, 1.0f, -1.0f, 0.0f};
    std::vector<float> b{-1.0f, 1.0f, 0.0f, -0.0f, 0.0f};
    float s = kernels::dot_scalar(a.data(), b.data(), a.size());
    float v = kernels::dot_avx2(a.data(), b.data(), a.size());
    CHECK(bit_equal(s, v));
}
#endif

TEST_CASE("dispatch override switches the active kernel") {
    kernels::set_kernel_override(kernels::Kernel::scalar);
    CHECK(kernels::active_kernel() == kernels::Kernel::scalar);

    std::mt19937 rng(3);
    auto a = random_vec(rng, 300);
    auto b = random_vec(rng, 300);
    float via_scalar = kernels::dot(a, b);

    kernels::set_kernel_override(std::nullopt);
    CHECK(kernels::active_kernel() == kernels::detect_kernel());
    float via_active = kernels::dot(a, b);

    // Variants are bit-exact by construction, so dispatch never changes results.
    CHECK(bit_equal(via_scalar, via_active));
}
