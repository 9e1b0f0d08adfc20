#include "redlens/simd/kernels.hpp"

namespace redlens::simd::scalar {

double dot(const double* x, const double* y, std::size_t n)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += x[i] * y[i];
    }
    return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

} // namespace redlens::simd::scalar
