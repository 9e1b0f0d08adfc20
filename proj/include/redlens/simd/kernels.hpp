#pragma once

// Dense double-precision kernels used by embedding training and scoring.
//
// Each kernel has a portable scalar reference and vector variants (AVX2+FMA
// on x86-64, NEON on aarch64). The active variant is chosen once at startup
// from CPU capabilities and can be overridden with set_backend() or the
// REDLENS_SIMD environment variable ("scalar", "avx2", "neon").
//
// Vector variants reassociate sums, so results agree with the scalar
// reference to rounding error, not bit for bit. Within one backend every
// kernel is deterministic.

#include <cstddef>
#include <span>
#include <string_view>

namespace redlens::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

bool backend_available(Backend b);

Backend active_backend();

/// Throws ArgumentError if `b` is not available on this CPU.
void set_backend(Backend b);

/// sum_i x[i] * y[i]; sizes must match.
double dot(std::span<const double> x, std::span<const double> y);

/// y += alpha * x; sizes must match.
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// y = A x for row-major A of shape (y.size(), x.size()).
void gemv(std::span<const double> a, std::span<const double> x, std::span<double> y);

/// cosine(x, y); 0 when either vector is zero.
double cosine(std::span<const double> x, std::span<const double> y);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
} // namespace neon
#endif

} // namespace redlens::simd
