#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redlens/error.hpp"
#include "redlens/simd/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace redlens;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n)
{
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = dist(rng);
    }
    return v;
}

double naive_dot(const std::vector<double>& x, const std::vector<double>& y)
{
    long double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += static_cast<long double>(x[i]) * y[i];
    }
    return static_cast<double>(s);
}

// Restores the startup backend when a test case ends.
struct BackendGuard {
    simd::Backend saved = simd::active_backend();
    ~BackendGuard() { simd::set_backend(saved); }
};

std::vector<simd::Backend> available_backends()
{
    std::vector<simd::Backend> out;
    for (auto b : {simd::Backend::Scalar, simd::Backend::Avx2, simd::Backend::Neon}) {
        if (simd::backend_available(b)) {
            out.push_back(b);
        }
    }
    return out;
}

} // namespace

TEST_CASE("scalar backend is always available")
{
    CHECK(simd::backend_available(simd::Backend::Scalar));
    CHECK(simd::backend_name(simd::Backend::Scalar) == "scalar");
    CHECK(simd::backend_name(simd::Backend::Avx2) == "avx2");
}

TEST_CASE("dot agrees with a long double reference on every backend")
{
    BackendGuard guard;
    std::mt19937_64 rng(11);
    for (auto b : available_backends()) {
        simd::set_backend(b);
        for (std::size_t n = 0; n <= 67; ++n) {
            const auto x = random_vector(rng, n);
            const auto y = random_vector(rng, n);
            const double ref = naive_dot(x, y);
            const double got = simd::dot(x, y);
            CHECK_MESSAGE(std::abs(got - ref) <= 1e-12 * (1.0 + std::abs(ref)) * std::sqrt(n + 1.0),
                          simd::backend_name(b), " n=", n);
        }
    }
}

TEST_CASE("vector variants match the scalar reference")
{
    std::mt19937_64 rng(5);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 50u, 101u}) {
        const auto x = random_vector(rng, n);
        const auto y = random_vector(rng, n);
        const double ref = simd::scalar::dot(x.data(), y.data(), n);
        auto ref_axpy = y;
        simd::scalar::axpy(0.37, x.data(), ref_axpy.data(), n);
#if defined(__x86_64__) || defined(_M_X64)
        if (simd::backend_available(simd::Backend::Avx2)) {
            CHECK(std::abs(simd::avx2::dot(x.data(), y.data(), n) - ref) <= 1e-12 * (1.0 + std::abs(ref)));
            auto got = y;
            simd::avx2::axpy(0.37, x.data(), got.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                // fused multiply-add rounds once, the reference twice
                CHECK(std::abs(got[i] - ref_axpy[i]) <= 1e-15 * (1.0 + std::abs(ref_axpy[i])));
            }
        }
#endif
#if defined(__aarch64__)
        CHECK(std::abs(simd::neon::dot(x.data(), y.data(), n) - ref) <= 1e-12 * (1.0 + std::abs(ref)));
        auto got = y;
        simd::neon::axpy(0.37, x.data(), got.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(got[i] - ref_axpy[i]) <= 1e-15 * (1.0 + std::abs(ref_axpy[i])));
        }
#endif
    }
}

TEST_CASE("gemv and cosine")
{
    BackendGuard guard;
    std::mt19937_64 rng(9);
    for (auto b : available_backends()) {
        simd::set_backend(b);
        const std::size_t rows = 7;
        const std::size_t cols = 13;
        const auto a = random_vector(rng, rows * cols);
        const auto x = random_vector(rng, cols);
        std::vector<double> y(rows);
        simd::gemv(a, x, y);
        for (std::size_t r = 0; r < rows; ++r) {
            const std::vector<double> row(a.begin() + r * cols, a.begin() + (r + 1) * cols);
            CHECK(std::abs(y[r] - naive_dot(row, x)) < 1e-12);
        }
        const std::vector<double> e0{1, 0, 0};
        const std::vector<double> e1{0, 2, 0};
        const std::vector<double> z{0, 0, 0};
        CHECK(simd::cosine(e0, e1) == 0.0);
        CHECK(simd::cosine(e0, z) == 0.0);
        CHECK(simd::cosine(e1, e1) == doctest::Approx(1.0).epsilon(1e-15));
        const std::vector<double> neg{-3, 0, 0};
        CHECK(simd::cosine(e0, neg) == doctest::Approx(-1.0).epsilon(1e-15));
    }
}

TEST_CASE("cosine is scale invariant")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto u = random_vector(rng, 37);
        const auto v = random_vector(rng, 37);
        auto su = u;
        auto sv = v;
        for (auto& x : su) {
            x *= 3.5;
        }
        for (auto& x : sv) {
            x *= 0.01;
        }
        CHECK(std::abs(simd::cosine(su, sv) - simd::cosine(u, v)) < 1e-12);
        CHECK(std::abs(simd::cosine(u, u) - 1.0) < 1e-12);
    }
}

TEST_CASE("size mismatches are rejected")
{
    std::vector<double> a(3), b(4);
    CHECK_THROWS_AS(simd::dot(a, b), ArgumentError);
    CHECK_THROWS_AS(simd::axpy(1.0, a, b), ArgumentError);
    CHECK_THROWS_AS(simd::gemv(a, a, b), ArgumentError);
}

TEST_CASE("unavailable backend is rejected")
{
    for (auto b : {simd::Backend::Avx2, simd::Backend::Neon}) {
        if (!simd::backend_available(b)) {
            CHECK_THROWS_AS(simd::set_backend(b), ArgumentError);
        }
    }
}
