#include <immintrin.h>

#include "finsler/simd/kernels.hpp"

namespace finsler::simd::detail {

namespace {

inline std::uint64_t popcount_mask(__m256d m) {
  return static_cast<std::uint64_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(m))));
}

std::uint64_t count_crossings_with(double pi, double ci, double si, const double* p, const double* c,
                                   const double* s, std::size_t n) {
  const __m256d vci = _mm256_set1_pd(ci);
  const __m256d vsi = _mm256_set1_pd(si);
  const __m256d vpi2 = _mm256_set1_pd(pi * pi);
  const __m256d vtwo_pi = _mm256_set1_pd(2.0 * pi);
  const __m256d one = _mm256_set1_pd(1.0);
  std::uint64_t count = 0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vp = _mm256_loadu_pd(p + k);
    const __m256d cc = _mm256_add_pd(_mm256_mul_pd(vci, _mm256_loadu_pd(c + k)),
                                     _mm256_mul_pd(vsi, _mm256_loadu_pd(s + k)));
    const __m256d sq = _mm256_add_pd(vpi2, _mm256_mul_pd(vp, vp));
    const __m256d cross = _mm256_mul_pd(vtwo_pi, _mm256_mul_pd(vp, cc));
    const __m256d lhs = _mm256_add_pd(_mm256_sub_pd(sq, cross), _mm256_mul_pd(cc, cc));
    count += popcount_mask(_mm256_cmp_pd(lhs, one, _CMP_LT_OQ));
  }
  const double pi2 = pi * pi;
  const double two_pi = 2.0 * pi;
  for (; k < n; ++k) {
    const double cc = ci * c[k] + si * s[k];
    const double lhs = ((pi2 + p[k] * p[k]) - two_pi * (p[k] * cc)) + cc * cc;
    count += lhs < 1.0;
  }
  return count;
}

std::uint64_t count_separating(double x1, double y1, double x2, double y2, const double* p, const double* c,
                               const double* s, std::size_t n) {
  const __m256d vx1 = _mm256_set1_pd(x1), vy1 = _mm256_set1_pd(y1);
  const __m256d vx2 = _mm256_set1_pd(x2), vy2 = _mm256_set1_pd(y2);
  std::uint64_t count = 0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vp = _mm256_loadu_pd(p + k);
    const __m256d vs = _mm256_loadu_pd(s + k);
    const __m256d vc = _mm256_loadu_pd(c + k);
    const __m256d o1 = _mm256_sub_pd(_mm256_mul_pd(vx1, vs), _mm256_mul_pd(vy1, vc));
    const __m256d o2 = _mm256_sub_pd(_mm256_mul_pd(vx2, vs), _mm256_mul_pd(vy2, vc));
    const __m256d up = _mm256_and_pd(_mm256_cmp_pd(o1, vp, _CMP_LT_OQ), _mm256_cmp_pd(vp, o2, _CMP_LT_OQ));
    const __m256d down = _mm256_and_pd(_mm256_cmp_pd(o2, vp, _CMP_LT_OQ), _mm256_cmp_pd(vp, o1, _CMP_LT_OQ));
    count += popcount_mask(_mm256_or_pd(up, down));
  }
  for (; k < n; ++k) {
    const double o1 = x1 * s[k] - y1 * c[k];
    const double o2 = x2 * s[k] - y2 * c[k];
    count += (o1 < p[k] && p[k] < o2) || (o2 < p[k] && p[k] < o1);
  }
  return count;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < n; ++k) sum += a[k] * b[k];
  return sum;
}

}  // namespace

const Kernels avx2_kernels{count_crossings_with, count_separating, dot};

}  // namespace finsler::simd::detail
