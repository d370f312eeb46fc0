#include "finsler/simd/kernels.hpp"

namespace finsler::simd::detail {

namespace {

std::uint64_t count_crossings_with(double pi, double ci, double si, const double* p, const double* c,
                                   const double* s, std::size_t n) {
  const double pi2 = pi * pi;
  const double two_pi = 2.0 * pi;
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double cc = ci * c[k] + si * s[k];
    const double lhs = ((pi2 + p[k] * p[k]) - two_pi * (p[k] * cc)) + cc * cc;
    count += lhs < 1.0;
  }
  return count;
}

std::uint64_t count_separating(double x1, double y1, double x2, double y2, const double* p, const double* c,
                               const double* s, std::size_t n) {
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double o1 = x1 * s[k] - y1 * c[k];
    const double o2 = x2 * s[k] - y2 * c[k];
    count += (o1 < p[k] && p[k] < o2) || (o2 < p[k] && p[k] < o1);
  }
  return count;
}

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += a[k] * b[k];
  return sum;
}

}  // namespace

const Kernels scalar_kernels{count_crossings_with, count_separating, dot};

}  // namespace finsler::simd::detail
