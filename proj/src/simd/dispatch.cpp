#include "redlens/simd/kernels.hpp"

#include "redlens/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

namespace redlens::simd {
namespace {

struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
};

constexpr KernelTable kScalar{&scalar::dot, &scalar::axpy};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{&avx2::dot, &avx2::axpy};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeon{&neon::dot, &neon::axpy};
#endif

const KernelTable& table_for(Backend b)
{
    switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::Avx2:
        return kAvx2;
#endif
#if defined(__aarch64__)
    case Backend::Neon:
        return kNeon;
#endif
    default:
        return kScalar;
    }
}

Backend detect()
{
    if (const char* env = std::getenv("REDLENS_SIMD")) {
        std::string want(env);
        if (want == "scalar") {
            return Backend::Scalar;
        }
        if (want == "avx2" && backend_available(Backend::Avx2)) {
            return Backend::Avx2;
        }
        if (want == "neon" && backend_available(Backend::Neon)) {
            return Backend::Neon;
        }
    }
    if (backend_available(Backend::Avx2)) {
        return Backend::Avx2;
    }
    if (backend_available(Backend::Neon)) {
        return Backend::Neon;
    }
    return Backend::Scalar;
}

std::atomic<Backend>& current()
{
    static std::atomic<Backend> backend{detect()};
    return backend;
}

void check_sizes(std::size_t a, std::size_t b)
{
    if (a != b) {
        throw ArgumentError("simd: size mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

} // namespace

std::string_view backend_name(Backend b)
{
    switch (b) {
    case Backend::Avx2:
        return "avx2";
    case Backend::Neon:
        return "neon";
    case Backend::Scalar:
        break;
    }
    return "scalar";
}

bool backend_available(Backend b)
{
    switch (b) {
    case Backend::Scalar:
        return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Backend active_backend()
{
    return current().load(std::memory_order_relaxed);
}

void set_backend(Backend b)
{
    if (!backend_available(b)) {
        throw ArgumentError("simd: backend " + std::string(backend_name(b)) + " not available on this CPU");
    }
    current().store(b, std::memory_order_relaxed);
}

double dot(std::span<const double> x, std::span<const double> y)
{
    check_sizes(x.size(), y.size());
    return table_for(active_backend()).dot(x.data(), y.data(), x.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
    check_sizes(x.size(), y.size());
    table_for(active_backend()).axpy(alpha, x.data(), y.data(), x.size());
}

void gemv(std::span<const double> a, std::span<const double> x, std::span<double> y)
{
    check_sizes(a.size(), x.size() * y.size());
    const auto& k = table_for(active_backend());
    const std::size_t cols = x.size();
    for (std::size_t r = 0; r < y.size(); ++r) {
        y[r] = k.dot(a.data() + r * cols, x.data(), cols);
    }
}

double cosine(std::span<const double> x, std::span<const double> y)
{
    check_sizes(x.size(), y.size());
    const auto& k = table_for(active_backend());
    const double nx = k.dot(x.data(), x.data(), x.size());
    const double ny = k.dot(y.data(), y.data(), y.size());
    if (nx == 0.0 || ny == 0.0) {
        return 0.0;
    }
    const double c = k.dot(x.data(), y.data(), x.size()) / (std::sqrt(nx) * std::sqrt(ny));
    return std::clamp(c, -1.0, 1.0);
}

} // namespace redlens::simd
