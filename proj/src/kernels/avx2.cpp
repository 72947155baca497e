// Compiled with -mavx2 -mfma. Only reachable through avx2_table(), which
// checks the running CPU first.

#include "seamkit/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace seamkit::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;

void points_avx2(const PowerCubic& c, const double* t, double* x, double* y, std::size_t n) {
  const __m256d x0 = _mm256_set1_pd(c.x0), x1 = _mm256_set1_pd(c.x1);
  const __m256d x2 = _mm256_set1_pd(c.x2), x3 = _mm256_set1_pd(c.x3);
  const __m256d y0 = _mm256_set1_pd(c.y0), y1 = _mm256_set1_pd(c.y1);
  const __m256d y2 = _mm256_set1_pd(c.y2), y3 = _mm256_set1_pd(c.y3);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d s = _mm256_loadu_pd(t + i);
    __m256d px = _mm256_fmadd_pd(x3, s, x2);
    px = _mm256_fmadd_pd(px, s, x1);
    px = _mm256_fmadd_pd(px, s, x0);
    __m256d py = _mm256_fmadd_pd(y3, s, y2);
    py = _mm256_fmadd_pd(py, s, y1);
    py = _mm256_fmadd_pd(py, s, y0);
    _mm256_storeu_pd(x + i, px);
    _mm256_storeu_pd(y + i, py);
  }
  for (; i < n; ++i) {
    const double s = t[i];
    x[i] = ((c.x3 * s + c.x2) * s + c.x1) * s + c.x0;
    y[i] = ((c.y3 * s + c.y2) * s + c.y1) * s + c.y0;
  }
}

// B'(t) for four parameters at once.
inline void derivative(const PowerCubic& c, __m256d s, __m256d& dx, __m256d& dy) {
  const __m256d ax = _mm256_set1_pd(3.0 * c.x3), bx = _mm256_set1_pd(2.0 * c.x2);
  const __m256d ay = _mm256_set1_pd(3.0 * c.y3), by = _mm256_set1_pd(2.0 * c.y2);
  dx = _mm256_fmadd_pd(_mm256_fmadd_pd(ax, s, bx), s, _mm256_set1_pd(c.x1));
  dy = _mm256_fmadd_pd(_mm256_fmadd_pd(ay, s, by), s, _mm256_set1_pd(c.y1));
}

void speeds_avx2(const PowerCubic& c, const double* t, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d dx, dy;
    derivative(c, _mm256_loadu_pd(t + i), dx, dy);
    const __m256d sp2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(sp2));
  }
  for (; i < n; ++i) {
    const double s = t[i];
    const double dx = (3.0 * c.x3 * s + 2.0 * c.x2) * s + c.x1;
    const double dy = (3.0 * c.y3 * s + 2.0 * c.y2) * s + c.y1;
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

void curvatures_avx2(const PowerCubic& c, const double* t, double* out, std::size_t n) {
  const __m256d six_x3 = _mm256_set1_pd(6.0 * c.x3), two_x2 = _mm256_set1_pd(2.0 * c.x2);
  const __m256d six_y3 = _mm256_set1_pd(6.0 * c.y3), two_y2 = _mm256_set1_pd(2.0 * c.y2);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d s = _mm256_loadu_pd(t + i);
    __m256d dx, dy;
    derivative(c, s, dx, dy);
    const __m256d ddx = _mm256_fmadd_pd(six_x3, s, two_x2);
    const __m256d ddy = _mm256_fmadd_pd(six_y3, s, two_y2);
    const __m256d sp2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
    const __m256d num = _mm256_fmsub_pd(dx, ddy, _mm256_mul_pd(dy, ddx));
    const __m256d den = _mm256_mul_pd(sp2, _mm256_sqrt_pd(sp2));
    const __m256d k = _mm256_div_pd(num, den);
    const __m256d degenerate = _mm256_cmp_pd(sp2, zero, _CMP_EQ_OQ);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(k, inf, degenerate));
  }
  for (; i < n; ++i) {
    const double s = t[i];
    const double dx = (3.0 * c.x3 * s + 2.0 * c.x2) * s + c.x1;
    const double dy = (3.0 * c.y3 * s + 2.0 * c.y2) * s + c.y1;
    const double ddx = 6.0 * c.x3 * s + 2.0 * c.x2;
    const double ddy = 6.0 * c.y3 * s + 2.0 * c.y2;
    const double sp2 = dx * dx + dy * dy;
    out[i] = sp2 == 0.0 ? std::numeric_limits<double>::infinity()
                        : (dx * ddy - dy * ddx) / (sp2 * std::sqrt(sp2));
  }
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{"avx2", points_avx2, speeds_avx2, curvatures_avx2};
  return table;
}

}  // namespace seamkit::kernels::detail
